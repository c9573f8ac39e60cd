// AVX2 backend: two complex doubles per register, mirroring the scalar
// kernels' operation order exactly (mul/add only, no FMA) so both backends
// round identically.

#include "ringsqueeze/kernels.hpp"

#ifdef RINGSQUEEZE_HAVE_AVX2

#include <immintrin.h>

namespace ringsqueeze::kernels {

namespace {

inline __m256d cmul2(__m256d x, __m256d y) {
  const __m256d yr = _mm256_movedup_pd(y);
  const __m256d yi = _mm256_permute_pd(y, 0xF);
  const __m256d t1 = _mm256_mul_pd(x, yr);
  const __m256d xs = _mm256_permute_pd(x, 0x5);
  const __m256d t2 = _mm256_mul_pd(xs, yi);
  return _mm256_addsub_pd(t1, t2);  // (xr yr - xi yi, xi yr + xr yi)
}

inline __m256d conj2(__m256d x) {
  const __m256d mask = _mm256_set_pd(-0.0, 0.0, -0.0, 0.0);
  return _mm256_xor_pd(x, mask);
}

inline __m256d neg_i2(__m256d t) {
  // (re, im) -> (im, -re)
  const __m256d swapped = _mm256_permute_pd(t, 0x5);
  const __m256d mask = _mm256_set_pd(-0.0, 0.0, -0.0, 0.0);
  return _mm256_xor_pd(swapped, mask);
}

inline __m256d density2(__m256d u) {
  const __m256d sq = _mm256_mul_pd(u, u);
  return _mm256_hadd_pd(sq, sq);  // per-point |u|^2, duplicated into both lanes
}

void spinor_drift_avx2(const DriftCoefs& c, const double* up, const double* u0,
                       const double* um, double* fp, double* f0, double* fm,
                       std::size_t m) {
  const __m256d c0v = _mm256_set1_pd(c.c0);
  const __m256d c2v = _mm256_set1_pd(c.c2);
  const __m256d c22v = _mm256_set1_pd(2.0 * c.c2);
  std::size_t i = 0;
  for (; i + 2 <= m; i += 2) {
    const __m256d p = _mm256_loadu_pd(up + 2 * i);
    const __m256d z = _mm256_loadu_pd(u0 + 2 * i);
    const __m256d q = _mm256_loadu_pd(um + 2 * i);

    const __m256d np = density2(p);
    const __m256d n0 = density2(z);
    const __m256d nm = density2(q);
    const __m256d s = _mm256_add_pd(np, n0);
    const __m256d n = _mm256_add_pd(s, nm);
    const __m256d sm = _mm256_add_pd(nm, n0);
    const __m256d vp = _mm256_add_pd(_mm256_mul_pd(c0v, n),
                                     _mm256_mul_pd(c2v, _mm256_sub_pd(s, nm)));
    const __m256d vm = _mm256_add_pd(_mm256_mul_pd(c0v, n),
                                     _mm256_mul_pd(c2v, _mm256_sub_pd(sm, np)));
    const __m256d v0 = _mm256_add_pd(_mm256_mul_pd(c0v, n),
                                     _mm256_mul_pd(c2v, _mm256_add_pd(np, nm)));

    const __m256d sq = cmul2(z, z);
    const __m256d pp = cmul2(conj2(q), sq);
    const __m256d pm = cmul2(conj2(p), sq);
    const __m256d pq = cmul2(p, q);
    const __m256d p0 = cmul2(conj2(z), pq);

    __m256d tp = _mm256_add_pd(_mm256_mul_pd(vp, p), _mm256_mul_pd(c2v, pp));
    __m256d tm = _mm256_add_pd(_mm256_mul_pd(vm, q), _mm256_mul_pd(c2v, pm));
    __m256d t0 = _mm256_add_pd(_mm256_mul_pd(v0, z), _mm256_mul_pd(c22v, p0));

    if (c.seed_plus) {
      const __m256d sp = _mm256_loadu_pd(c.seed_plus + 2 * i);
      const __m256d sn = _mm256_loadu_pd(c.seed_minus + 2 * i);
      tp = _mm256_add_pd(tp, cmul2(sp, z));
      tm = _mm256_add_pd(tm, cmul2(sn, z));
      t0 = _mm256_add_pd(t0, cmul2(conj2(sp), p));
      t0 = _mm256_add_pd(t0, cmul2(conj2(sn), q));
    }
    if (c.bs_plus) {
      const __m256d b = _mm256_loadu_pd(c.bs_plus + 2 * i);
      tp = _mm256_add_pd(tp, cmul2(b, q));
      tm = _mm256_add_pd(tm, cmul2(conj2(b), p));
    }

    _mm256_storeu_pd(fp + 2 * i, neg_i2(tp));
    _mm256_storeu_pd(f0 + 2 * i, neg_i2(t0));
    _mm256_storeu_pd(fm + 2 * i, neg_i2(tm));
  }
  if (i < m) {
    // M is even everywhere in this code base; delegate any odd tail anyway.
    DriftCoefs tail = c;
    if (tail.seed_plus) {
      tail.seed_plus += 2 * i;
      tail.seed_minus += 2 * i;
    }
    if (tail.bs_plus) tail.bs_plus += 2 * i;
    scalar_table().spinor_drift(tail, up + 2 * i, u0 + 2 * i, um + 2 * i,
                                fp + 2 * i, f0 + 2 * i, fm + 2 * i, m - i);
  }
}

void cmul_avx2(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    _mm256_storeu_pd(out + 2 * i,
                     cmul2(_mm256_loadu_pd(a + 2 * i), _mm256_loadu_pd(b + 2 * i)));
  if (i < n) scalar_table().cmul(a + 2 * i, b + 2 * i, out + 2 * i, n - i);
}

void cmul_inplace_avx2(double* a, const double* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    _mm256_storeu_pd(a + 2 * i,
                     cmul2(_mm256_loadu_pd(a + 2 * i), _mm256_loadu_pd(b + 2 * i)));
  if (i < n) scalar_table().cmul_inplace(a + 2 * i, b + 2 * i, n - i);
}

void accum_neg_i_scaled_avx2(double alpha, const double* a, double* f, std::size_t n) {
  const __m256d coef = _mm256_set_pd(-alpha, alpha, -alpha, alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d av = _mm256_loadu_pd(a + 2 * i);
    const __m256d fv = _mm256_loadu_pd(f + 2 * i);
    const __m256d swapped = _mm256_permute_pd(av, 0x5);
    _mm256_storeu_pd(f + 2 * i, _mm256_add_pd(fv, _mm256_mul_pd(swapped, coef)));
  }
  if (i < n) scalar_table().accum_neg_i_scaled(alpha, a + 2 * i, f + 2 * i, n - i);
}

void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d av = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d yv = _mm256_loadu_pd(y + i);
    _mm256_storeu_pd(y + i, _mm256_add_pd(yv, _mm256_mul_pd(av, _mm256_loadu_pd(x + i))));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void xpay_avx2(const double* a, double alpha, const double* x, double* out, std::size_t n) {
  const __m256d av = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d s = _mm256_add_pd(_mm256_loadu_pd(a + i),
                                    _mm256_mul_pd(av, _mm256_loadu_pd(x + i)));
    _mm256_storeu_pd(out + i, s);
  }
  for (; i < n; ++i) out[i] = a[i] + alpha * x[i];
}

void scale_avx2(double alpha, const double* x, double* out, std::size_t n) {
  const __m256d av = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out + i, _mm256_mul_pd(av, _mm256_loadu_pd(x + i)));
  for (; i < n; ++i) out[i] = alpha * x[i];
}

}  // namespace

const Table& avx2_table() {
  static const Table t{
      "avx2",
      spinor_drift_avx2,
      cmul_avx2,
      cmul_inplace_avx2,
      accum_neg_i_scaled_avx2,
      axpy_avx2,
      xpay_avx2,
      scale_avx2,
  };
  return t;
}

}

#endif  // RINGSQUEEZE_HAVE_AVX2
