#include <doctest.h>

#include <cmath>

#include "fock_oracle.hpp"
#include "ringsqueeze/analytic.hpp"
#include "ringsqueeze/constants.hpp"

using ringsqueeze::constants::pi;
namespace A = ringsqueeze::analytic;

namespace {

constexpr double kChi34 = 3.0 * pi / 4.0;

struct Reference {
  double n_seed, r, chi, na, var_jz, j_perp, xi;
};

// Independently computed with a sparse-matrix exponential on the full
// (n_a, n_b) grid (different basis layout and algorithm than the oracle).
const Reference kReferences[] = {
    {1, 0.5, kChi34, 2.989822146, 0.5, 2.718281828, 0.636104101},
    {1, 1.0, kChi34, 8.770153944, 0.5, 7.389056099, 0.400787940},
    {1, 1.5, kChi34, 24.619367921, 0.5, 20.085536923, 0.247033018},
    {2, 0.5, kChi34, 5.708103974, 1.0, 5.436563657, 0.621493310},
    {2, 1.5, kChi34, 44.704904844, 1.0, 40.171073846, 0.235385195},
    {4, 1.0, kChi34, 30.937322241, 2.0, 29.556224396, 0.376376415},
    {4, 1.5, kChi34, 84.875978691, 2.0, 80.342147693, 0.229339550},
    {10, 1.0, kChi34, 75.271658835, 5.0, 73.890560989, 0.371301565},
    {2, 1.0, pi / 4.0, 1.651768412, 1.0, 0.270670566, 6.715039076},
};

fock::TwoModeSqueezedState make(double n_seed, double chi, double r) {
  return fock::TwoModeSqueezedState(n_seed, chi, r, 480, 36);
}

}  // namespace

TEST_CASE("oracle agrees with an independently coded exact evolution") {
  for (const Reference& ref : kReferences) {
    const auto st = make(ref.n_seed, ref.chi, ref.r);
    CHECK(st.norm() == doctest::Approx(1.0).epsilon(1e-11));
    CHECK(st.truncation_tail() < 1e-10);
    CHECK(st.number_a() == doctest::Approx(ref.na).epsilon(1e-7));
    CHECK(st.number_b() == doctest::Approx(ref.na).epsilon(1e-7));
    CHECK(st.var_jz() == doctest::Approx(ref.var_jz).epsilon(1e-7));
    CHECK(st.j_perp() == doctest::Approx(ref.j_perp).epsilon(1e-7));
    CHECK(st.xi() == doctest::Approx(ref.xi).epsilon(1e-7));
  }
}

TEST_CASE("closed forms match the oracle to 1e-6 on the full grid") {
  for (double n_seed : {1.0, 2.0, 4.0}) {
    for (double r : {0.3, 0.75, 1.2, 1.5}) {
      const auto st = make(n_seed, kChi34, r);
      REQUIRE(st.truncation_tail() < 1e-10);
      CHECK(st.number_a() ==
            doctest::Approx(A::mode_population(r, kChi34, n_seed)).epsilon(1e-6));
      CHECK(st.j_perp() ==
            doctest::Approx(A::perpendicular_spin(r, kChi34, n_seed)).epsilon(1e-6));
      CHECK(st.xi() == doctest::Approx(A::wineland_xi(r, kChi34, n_seed)).epsilon(1e-6));
      // pair creation leaves the number difference untouched: Var(Jz) stays at
      // its coherent-seed value N_seed/2 for every r
      CHECK(st.var_jz() == doctest::Approx(0.5 * n_seed).epsilon(1e-8));
      CHECK(st.mean_jz() == doctest::Approx(0.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("oracle at r = 0 is the coherent product state") {
  const auto st = make(3.0, kChi34, 0.0);
  CHECK(st.number_a() == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(st.var_jz() == doctest::Approx(1.5).epsilon(1e-10));   // (N+N)/4
  CHECK(st.var_number_a() == doctest::Approx(3.0).epsilon(1e-9));  // Poisson
  CHECK(st.j_perp() == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(st.xi() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("vacuum growth and the unseeded-pair variance term") {
  for (double r : {0.5, 1.0}) {
    const fock::TwoModeSqueezedState st(0.0, 0.0, r, 320, 0);
    CHECK(st.norm() == doctest::Approx(1.0).epsilon(1e-11));
    const double sh = std::sinh(r);
    CHECK(st.number_a() == doctest::Approx(sh * sh).epsilon(1e-8));
    // During interrogation an unseeded pair (a_k, b_{k-2l}) straddles two
    // independent squeezed pairs, so <A_k A_k> = (Var n_a + Var n_b)/4 with
    // thermal per-mode number statistics from the oracle:
    CHECK(0.5 * st.var_number_a() ==
          doctest::Approx(A::unseeded_variance_term(r)).epsilon(1e-7));
    CHECK(st.var_number_a() ==
          doctest::Approx(std::sinh(2.0 * r) * std::sinh(2.0 * r) / 4.0).epsilon(1e-7));
  }
}
