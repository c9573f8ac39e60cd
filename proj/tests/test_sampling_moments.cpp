#include <doctest.h>

#include <cmath>
#include <cstring>

#include "ringsqueeze/engine.hpp"
#include "ringsqueeze/errors.hpp"

using namespace ringsqueeze;

namespace {
constexpr double kChi34 = 3.0 * constants::pi / 4.0;
const ModeLayout kFull{16, 2, false};
const ModeLayout kSingle{16, 2, true};
}  // namespace

TEST_CASE("sampling: coherent pump plus half-quantum vacuum noise") {
  const double n0 = 1e5;
  const auto ens = sample_initial(n0, kFull, 1000, 42);
  const SpinMoments m = estimate_moments(ens);

  // corrected pump total recovers N0
  CHECK(std::abs(m.n_comp[kCompZero] - n0) < 3.0 * 3.0 * std::sqrt(n0 / 1000.0));
  // vacuum components read zero after the 1/2-per-mode subtraction
  CHECK(std::abs(m.n_comp[kCompPlus]) < 0.5);
  CHECK(std::abs(m.n_comp[kCompMinus]) < 0.5);
  CHECK(std::abs(m.mean_jx) < 3.0 * m.se_jx + 1e-9);
  CHECK(std::abs(m.mean_jz) < 3.0 * m.se_jz + 1e-9);
  // corrected Var(Jz) of vacuum -> 0
  CHECK(std::abs(m.var_jz - 0.0) < 3.0 * m.se_var_jz + 0.05);

  // raw symmetric-ordered population of a vacuum mode -> 1/2
  double raw = 0.0;
  for (std::size_t i = 0; i < ens.n_traj(); ++i)
    raw += std::norm(ens.component(i, kCompPlus)[3]);
  raw /= static_cast<double>(ens.n_traj());
  CHECK(raw == doctest::Approx(0.5).epsilon(0.15));
}

TEST_CASE("sampling: component-0 number statistics are Poissonian") {
  const double n0 = 1e4;
  const auto ens = sample_initial(n0, kFull, 4000, 7);
  const std::size_t n = ens.n_traj();
  double mean = 0.0, ss = 0.0;
  std::vector<double> vals(n);
  for (std::size_t i = 0; i < n; ++i) {
    vals[i] = trajectory_stats(ens, i).n[kCompZero];
    mean += vals[i];
  }
  mean /= n;
  for (std::size_t i = 0; i < n; ++i) ss += (vals[i] - mean) * (vals[i] - mean);
  const double var_w = ss / (n - 1);
  // Var_W(N_w) = Var(N) + M/4: coherent state has Var(N) = N0
  const double corrected = var_w - kFull.m / 4.0;
  // stderr of a variance estimate ~ var * sqrt(2/n)
  CHECK(std::abs(corrected - n0) < 3.0 * var_w * std::sqrt(2.0 / n));
}

TEST_CASE("seed pulse: displacement, number conservation, statistics") {
  const double n0 = 1e5, nseed = 10.0;
  auto ens = sample_initial(n0, kFull, 20000, 11);
  seed_pulse(ens, nseed, kChi34);
  const SpinMoments m = estimate_moments(ens);

  CHECK(std::abs(m.n_comp[kCompPlus] - nseed) < 3.0 * 0.1);
  CHECK(std::abs(m.n_comp[kCompMinus] - nseed) < 3.0 * 0.1);
  // mean total conserved by the pump depletion
  const double total = m.n_comp[0] + m.n_comp[1] + m.n_comp[2];
  CHECK(total == doctest::Approx(n0).epsilon(2e-3));
  // two independent coherent states: Var(Jz) = (N+ + N-)/4
  CHECK(std::abs(m.var_jz - 0.5 * nseed) < 3.0 * m.se_var_jz);
  // coherent SQL: xi = 1 within 5% at n_traj = 1e4-scale
  CHECK(m.xi == doctest::Approx(1.0).epsilon(0.05));
  CHECK(m.j_perp == doctest::Approx(nseed).epsilon(0.05));

  // seeded-mode mean amplitude carries phase chi - pi/2 relative to the pump
  cplx amp = 0.0;
  const unsigned slot = slot_of_mode(kFull.ell, kFull.m);
  for (std::size_t i = 0; i < ens.n_traj(); ++i) amp += ens.component(i, kCompPlus)[slot];
  amp /= static_cast<double>(ens.n_traj());
  CHECK(std::arg(amp) == doctest::Approx(kChi34 - constants::pi / 2.0).epsilon(0.02));

  CHECK_THROWS_AS(seed_pulse(ens, 6e4, kChi34), config_error);
}

TEST_CASE("seed pulse with zero atoms is the identity") {
  auto a = sample_initial(1e4, kFull, 50, 3);
  const auto before = a.amps;
  seed_pulse(a, 0.0, kChi34);
  CHECK(std::memcmp(before.data(), a.amps.data(), before.size() * sizeof(cplx)) == 0);
}

TEST_CASE("single-mode layout: restricted noise and corrections") {
  const auto ens = sample_initial(1e4, kSingle, 2000, 5);
  // inactive slots carry exactly zero
  for (unsigned s = 0; s < kSingle.m; ++s) {
    if (s == slot_of_mode(kSingle.ell, kSingle.m)) continue;
    CHECK(ens.component(7, kCompPlus)[s] == cplx(0.0, 0.0));
  }
  const SpinMoments m = estimate_moments(ens);
  CHECK(std::abs(m.n_comp[kCompPlus]) < 0.1);      // vacuum, 1/2 subtracted once
  CHECK(std::abs(m.var_jz) < 3.0 * m.se_var_jz + 0.02);  // offset 2/16
}

TEST_CASE("estimate_moments needs at least two trajectories") {
  const auto ens = sample_initial(10.0, kFull, 1, 1);
  CHECK_THROWS_AS(estimate_moments(ens), simulation_error);
}

TEST_CASE("moment estimation is deterministic in the trajectory order") {
  const auto ens = sample_initial(1e4, kFull, 300, 77);
  const SpinMoments a = estimate_moments(ens);
  const SpinMoments b = estimate_moments(ens);
  CHECK(a.mean_jz == b.mean_jz);
  CHECK(a.var_jz == b.var_jz);
  CHECK(a.xi == b.xi);
}
