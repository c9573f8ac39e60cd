// Reference kernels. The SIMD backends mirror these operation-for-operation;
// any change here must be replicated there (the equivalence tests compare
// bitwise).

#include "ringsqueeze/kernels.hpp"

namespace ringsqueeze::kernels {

namespace {

// re = xr*yr - xi*yi, im = xi*yr + xr*yi: the exact product/sum order the
// AVX2 addsub sequence produces.
inline void cmul1(double xr, double xi, double yr, double yi, double& zr, double& zi) {
  zr = xr * yr - xi * yi;
  zi = xi * yr + xr * yi;
}

void spinor_drift_scalar(const DriftCoefs& c, const double* up, const double* u0,
                         const double* um, double* fp, double* f0, double* fm,
                         std::size_t m) {
  for (std::size_t i = 0; i < m; ++i) {
    const double pr = up[2 * i], pi = up[2 * i + 1];
    const double zr = u0[2 * i], zi = u0[2 * i + 1];
    const double mr = um[2 * i], mi = um[2 * i + 1];

    const double np = pr * pr + pi * pi;
    const double n0 = zr * zr + zi * zi;
    const double nm = mr * mr + mi * mi;
    const double n = (np + n0) + nm;
    const double vp = c.c0 * n + c.c2 * ((np + n0) - nm);
    const double vm = c.c0 * n + c.c2 * ((nm + n0) - np);
    const double v0 = c.c0 * n + c.c2 * (np + nm);

    double sqr, sqi;  // u0^2
    cmul1(zr, zi, zr, zi, sqr, sqi);

    double ppr, ppi;  // conj(um) * u0^2
    cmul1(mr, -mi, sqr, sqi, ppr, ppi);
    double pmr, pmi;  // conj(up) * u0^2
    cmul1(pr, -pi, sqr, sqi, pmr, pmi);
    double pmulr, pmuli;  // up * um
    cmul1(pr, pi, mr, mi, pmulr, pmuli);
    double p0r, p0i;  // conj(u0) * (up um)
    cmul1(zr, -zi, pmulr, pmuli, p0r, p0i);

    double tpr = vp * pr + c.c2 * ppr;
    double tpi = vp * pi + c.c2 * ppi;
    double tmr = vm * mr + c.c2 * pmr;
    double tmi = vm * mi + c.c2 * pmi;
    const double c22 = 2.0 * c.c2;
    double t0r = v0 * zr + c22 * p0r;
    double t0i = v0 * zi + c22 * p0i;

    if (c.seed_plus) {
      const double spr = c.seed_plus[2 * i], spi = c.seed_plus[2 * i + 1];
      const double smr = c.seed_minus[2 * i], smi = c.seed_minus[2 * i + 1];
      double ar, ai;
      cmul1(spr, spi, zr, zi, ar, ai);  // s+ * u0
      tpr += ar; tpi += ai;
      cmul1(smr, smi, zr, zi, ar, ai);  // s- * u0
      tmr += ar; tmi += ai;
      cmul1(spr, -spi, pr, pi, ar, ai);  // conj(s+) * up
      t0r += ar; t0i += ai;
      cmul1(smr, -smi, mr, mi, ar, ai);  // conj(s-) * um
      t0r += ar; t0i += ai;
    }
    if (c.bs_plus) {
      const double br = c.bs_plus[2 * i], bi = c.bs_plus[2 * i + 1];
      double ar, ai;
      cmul1(br, bi, mr, mi, ar, ai);  // b * um
      tpr += ar; tpi += ai;
      cmul1(br, -bi, pr, pi, ar, ai);  // conj(b) * up
      tmr += ar; tmi += ai;
    }

    // f = -i t
    fp[2 * i] = tpi;  fp[2 * i + 1] = -tpr;
    f0[2 * i] = t0i;  f0[2 * i + 1] = -t0r;
    fm[2 * i] = tmi;  fm[2 * i + 1] = -tmr;
  }
}

void cmul_scalar(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    cmul1(a[2 * i], a[2 * i + 1], b[2 * i], b[2 * i + 1], out[2 * i], out[2 * i + 1]);
}

void cmul_inplace_scalar(double* a, const double* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    double zr, zi;
    cmul1(a[2 * i], a[2 * i + 1], b[2 * i], b[2 * i + 1], zr, zi);
    a[2 * i] = zr;
    a[2 * i + 1] = zi;
  }
}

void accum_neg_i_scaled_scalar(double alpha, const double* a, double* f, std::size_t n) {
  const double nalpha = -alpha;
  for (std::size_t i = 0; i < n; ++i) {
    f[2 * i] += alpha * a[2 * i + 1];
    f[2 * i + 1] += nalpha * a[2 * i];
  }
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void xpay_scalar(const double* a, double alpha, const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] + alpha * x[i];
}

void scale_scalar(double alpha, const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = alpha * x[i];
}

}  // namespace

const Table& scalar_table() {
  static const Table t{
      "scalar",
      spinor_drift_scalar,
      cmul_scalar,
      cmul_inplace_scalar,
      accum_neg_i_scaled_scalar,
      axpy_scalar,
      xpay_scalar,
      scale_scalar,
  };
  return t;
}

}
