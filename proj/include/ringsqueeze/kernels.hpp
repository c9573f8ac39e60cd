#pragma once

#include <cstddef>

namespace ringsqueeze::kernels {

/// Pointwise drift coefficients for one evaluation on the theta grid.
/// Coupling arrays are interleaved complex of length m, or nullptr when the
/// corresponding Raman drive is off:
///   seed_plus[i]  = lambda_s e^{i chi} e^{+i l theta_i}   (psi_+1 <- psi_0)
///   seed_minus[i] = lambda_s e^{i chi} e^{-i l theta_i}   (psi_-1 <- psi_0)
///   bs_plus[i]    = lambda_b e^{i phi} e^{+i 2 l theta_i} (psi_+1 <- psi_-1)
struct DriftCoefs {
  double c0 = 0.0;
  double c2 = 0.0;
  const double* seed_plus = nullptr;
  const double* seed_minus = nullptr;
  const double* bs_plus = nullptr;
};

/// One backend. All arrays are interleaved complex (re, im) unless a _re
/// suffix marks a plain real view; counts are complex elements for complex
/// ops and doubles for real ops. Backends must agree bitwise: same per-lane
/// operation order, no FMA.
struct Table {
  const char* name;

  /// f_j = -i * (V_j u_j + pair_j + raman_j) over m grid points, where
  ///   V_+1 = c0 n + c2 ((n_+1 + n_0) - n_-1),   pair_+1 = c2 conj(u_-1) u_0^2
  ///   V_-1 = c0 n + c2 ((n_-1 + n_0) - n_+1),   pair_-1 = c2 conj(u_+1) u_0^2
  ///   V_0  = c0 n + c2 (n_+1 + n_-1),           pair_0  = 2 c2 conj(u_0) u_+1 u_-1
  void (*spinor_drift)(const DriftCoefs& c, const double* up, const double* u0,
                       const double* um, double* fp, double* f0, double* fm,
                       std::size_t m);

  void (*cmul)(const double* a, const double* b, double* out, std::size_t n);
  void (*cmul_inplace)(double* a, const double* b, std::size_t n);

  /// f += -i * alpha * a (complex, alpha real); the linear Zeeman-shift term.
  void (*accum_neg_i_scaled)(double alpha, const double* a, double* f, std::size_t n);

  void (*axpy)(double alpha, const double* x, double* y, std::size_t n_doubles);
  void (*xpay)(const double* a, double alpha, const double* x, double* out,
               std::size_t n_doubles);
  void (*scale)(double alpha, const double* x, double* out, std::size_t n_doubles);
};

const Table& scalar_table();
#ifdef RINGSQUEEZE_HAVE_AVX2
const Table& avx2_table();
#endif

/// Backend picked at startup: AVX2 when the CPU has it, scalar otherwise.
/// RINGSQUEEZE_SIMD=scalar|avx2|auto overrides (forcing an unsupported
/// backend throws).
const Table& active();

/// True when the running CPU can execute the AVX2 backend.
bool cpu_has_avx2();

}
