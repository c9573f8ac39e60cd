#include <doctest.h>

#include <complex>
#include <cstring>
#include <random>
#include <vector>

#include "ringsqueeze/kernels.hpp"

using namespace ringsqueeze;

namespace {

std::vector<double> random_doubles(std::size_t n, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> dist;
  std::vector<double> v(n);
  for (auto& x : v) x = dist(gen);
  return v;
}

bool bit_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() &&
         std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

/// Straightforward std::complex re-implementation of the drift contract.
void drift_reference(const kernels::DriftCoefs& c, const double* up, const double* u0,
                     const double* um, double* fp, double* f0, double* fm, std::size_t m) {
  using cd = std::complex<double>;
  auto at = [](const double* p, std::size_t i) { return cd(p[2 * i], p[2 * i + 1]); };
  for (std::size_t i = 0; i < m; ++i) {
    const cd p = at(up, i), z = at(u0, i), q = at(um, i);
    const double np = std::norm(p), n0 = std::norm(z), nm = std::norm(q);
    const double n = np + n0 + nm;
    cd tp = (c.c0 * n + c.c2 * (np + n0 - nm)) * p + c.c2 * std::conj(q) * z * z;
    cd tm = (c.c0 * n + c.c2 * (nm + n0 - np)) * q + c.c2 * std::conj(p) * z * z;
    cd t0 = (c.c0 * n + c.c2 * (np + nm)) * z + 2.0 * c.c2 * std::conj(z) * p * q;
    if (c.seed_plus) {
      const cd sp = at(c.seed_plus, i), sm = at(c.seed_minus, i);
      tp += sp * z;
      tm += sm * z;
      t0 += std::conj(sp) * p + std::conj(sm) * q;
    }
    if (c.bs_plus) {
      const cd b = at(c.bs_plus, i);
      tp += b * q;
      tm += std::conj(b) * p;
    }
    const cd rp = cd(0, -1) * tp, r0 = cd(0, -1) * t0, rm = cd(0, -1) * tm;
    fp[2 * i] = rp.real();
    fp[2 * i + 1] = rp.imag();
    f0[2 * i] = r0.real();
    f0[2 * i + 1] = r0.imag();
    fm[2 * i] = rm.real();
    fm[2 * i + 1] = rm.imag();
  }
}

void run_drift(const kernels::Table& t, const kernels::DriftCoefs& c, std::size_t m,
               const std::vector<double>& in, std::vector<double>& out) {
  out.assign(6 * m, 0.0);
  t.spinor_drift(c, in.data(), in.data() + 2 * m, in.data() + 4 * m, out.data(),
                 out.data() + 2 * m, out.data() + 4 * m, m);
}

}  // namespace

TEST_CASE("scalar drift kernel matches a std::complex reference") {
  const std::size_t m = 16;
  const auto in = random_doubles(6 * m, 5);
  const auto raman = random_doubles(6 * m, 6);
  kernels::DriftCoefs c;
  c.c0 = 0.07;
  c.c2 = -6.8e-4;

  std::vector<double> got, want(6 * m);
  run_drift(kernels::scalar_table(), c, m, in, got);
  drift_reference(c, in.data(), in.data() + 2 * m, in.data() + 4 * m, want.data(),
                  want.data() + 2 * m, want.data() + 4 * m, m);
  for (std::size_t i = 0; i < 6 * m; ++i)
    CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-12));

  c.seed_plus = raman.data();
  c.seed_minus = raman.data() + 2 * m;
  c.bs_plus = raman.data() + 4 * m;
  run_drift(kernels::scalar_table(), c, m, in, got);
  drift_reference(c, in.data(), in.data() + 2 * m, in.data() + 4 * m, want.data(),
                  want.data() + 2 * m, want.data() + 4 * m, m);
  for (std::size_t i = 0; i < 6 * m; ++i)
    CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-12));
}

#ifdef RINGSQUEEZE_HAVE_AVX2
TEST_CASE("avx2 backend is bit-identical to the scalar backend") {
  if (!kernels::cpu_has_avx2()) {
    MESSAGE("cpu lacks avx2; skipping equivalence checks");
    return;
  }
  const auto& sc = kernels::scalar_table();
  const auto& av = kernels::avx2_table();

  for (std::size_t m : {8u, 16u, 64u, 10u}) {
    const auto in = random_doubles(6 * m, 100 + m);
    const auto raman = random_doubles(6 * m, 200 + m);
    kernels::DriftCoefs c;
    c.c0 = 0.073;
    c.c2 = -6.8e-4;

    std::vector<double> a, b;
    run_drift(sc, c, m, in, a);
    run_drift(av, c, m, in, b);
    CHECK(bit_equal(a, b));

    c.seed_plus = raman.data();
    c.seed_minus = raman.data() + 2 * m;
    c.bs_plus = raman.data() + 4 * m;
    run_drift(sc, c, m, in, a);
    run_drift(av, c, m, in, b);
    CHECK(bit_equal(a, b));

    const auto x = random_doubles(2 * m, 300 + m);
    const auto y = random_doubles(2 * m, 400 + m);
    std::vector<double> oa(2 * m), ob(2 * m);
    sc.cmul(x.data(), y.data(), oa.data(), m);
    av.cmul(x.data(), y.data(), ob.data(), m);
    CHECK(bit_equal(oa, ob));

    oa = x;
    ob = x;
    sc.cmul_inplace(oa.data(), y.data(), m);
    av.cmul_inplace(ob.data(), y.data(), m);
    CHECK(bit_equal(oa, ob));

    oa = x;
    ob = x;
    sc.accum_neg_i_scaled(1.7, y.data(), oa.data(), m);
    av.accum_neg_i_scaled(1.7, y.data(), ob.data(), m);
    CHECK(bit_equal(oa, ob));

    oa = x;
    ob = x;
    sc.axpy(0.37, y.data(), oa.data(), 2 * m);
    av.axpy(0.37, y.data(), ob.data(), 2 * m);
    CHECK(bit_equal(oa, ob));

    sc.xpay(x.data(), -1.25, y.data(), oa.data(), 2 * m);
    av.xpay(x.data(), -1.25, y.data(), ob.data(), 2 * m);
    CHECK(bit_equal(oa, ob));

    sc.scale(3.5, y.data(), oa.data(), 2 * m);
    av.scale(3.5, y.data(), ob.data(), 2 * m);
    CHECK(bit_equal(oa, ob));
  }
}
#endif
