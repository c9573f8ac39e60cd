#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace ringsqueeze {

using cplx = std::complex<double>;

/// Mode storage is FFT natural order: slot s holds k = s for s < M/2 and
/// k = s - M otherwise.
inline int mode_of_slot(unsigned s, unsigned m) {
  return static_cast<int>(s) < static_cast<int>(m / 2)
             ? static_cast<int>(s)
             : static_cast<int>(s) - static_cast<int>(m);
}
inline unsigned slot_of_mode(int k, unsigned m) {
  const int r = k % static_cast<int>(m);
  return static_cast<unsigned>(r < 0 ? r + static_cast<int>(m) : r);
}

/// Transform between angular-momentum amplitudes a_k and the field on the
/// uniform theta grid, psi(theta_m) = (1/sqrt(2pi)) sum_k a_k e^{i k theta_m}.
/// Radix-2 for powers of two, direct DFT for other even M.
class ModeTransform {
 public:
  explicit ModeTransform(unsigned m);

  unsigned size() const { return m_; }

  int mode_of_slot(unsigned s) const { return ringsqueeze::mode_of_slot(s, m_); }
  unsigned slot_of_mode(int k) const { return ringsqueeze::slot_of_mode(k, m_); }

  void to_grid(const cplx* modes, cplx* grid) const;
  void to_modes(const cplx* grid, cplx* modes) const;

 private:
  void fft_pow2(cplx* data, bool inverse) const;
  void dft_direct(const cplx* in, cplx* out, bool inverse) const;

  unsigned m_;
  bool pow2_;
  std::vector<unsigned> bitrev_;
  std::vector<cplx> twiddle_fwd_;  // e^{-2pi i j / M} for j < M/2
  std::vector<cplx> twiddle_inv_;
  std::vector<cplx> dft_table_;    // e^{-2pi i (s m mod M) / M}, direct path
};

}
