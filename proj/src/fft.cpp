#include "ringsqueeze/fft.hpp"

#include <cmath>

#include "ringsqueeze/constants.hpp"
#include "ringsqueeze/errors.hpp"

namespace ringsqueeze {

namespace {
bool is_pow2(unsigned m) { return m != 0 && (m & (m - 1)) == 0; }
}

ModeTransform::ModeTransform(unsigned m) : m_(m), pow2_(is_pow2(m)) {
  if (m < 2 || m % 2 != 0)
    throw config_error("mode count M must be even and >= 2");
  if (pow2_) {
    bitrev_.resize(m_);
    unsigned bits = 0;
    while ((1u << bits) < m_) ++bits;
    for (unsigned i = 0; i < m_; ++i) {
      unsigned r = 0;
      for (unsigned b = 0; b < bits; ++b)
        if (i & (1u << b)) r |= 1u << (bits - 1 - b);
      bitrev_[i] = r;
    }
    twiddle_fwd_.resize(m_ / 2);
    twiddle_inv_.resize(m_ / 2);
    for (unsigned j = 0; j < m_ / 2; ++j) {
      const double ang = -2.0 * constants::pi * j / m_;
      twiddle_fwd_[j] = {std::cos(ang), std::sin(ang)};
      twiddle_inv_[j] = std::conj(twiddle_fwd_[j]);
    }
  } else {
    dft_table_.resize(m_);
    for (unsigned j = 0; j < m_; ++j) {
      const double ang = -2.0 * constants::pi * j / m_;
      dft_table_[j] = {std::cos(ang), std::sin(ang)};
    }
  }
}

void ModeTransform::fft_pow2(cplx* data, bool inverse) const {
  for (unsigned i = 0; i < m_; ++i) {
    const unsigned j = bitrev_[i];
    if (j > i) std::swap(data[i], data[j]);
  }
  const auto& tw = inverse ? twiddle_inv_ : twiddle_fwd_;
  for (unsigned len = 2; len <= m_; len <<= 1) {
    const unsigned stride = m_ / len;
    for (unsigned start = 0; start < m_; start += len) {
      for (unsigned j = 0; j < len / 2; ++j) {
        const cplx w = tw[j * stride];
        cplx& a = data[start + j];
        cplx& b = data[start + j + len / 2];
        const cplx t(w.real() * b.real() - w.imag() * b.imag(),
                     w.real() * b.imag() + w.imag() * b.real());
        b = a - t;
        a = a + t;
      }
    }
  }
}

void ModeTransform::dft_direct(const cplx* in, cplx* out, bool inverse) const {
  for (unsigned s = 0; s < m_; ++s) {
    cplx acc = 0.0;
    for (unsigned j = 0; j < m_; ++j) {
      cplx w = dft_table_[(static_cast<std::size_t>(s) * j) % m_];
      if (inverse) w = std::conj(w);
      acc += cplx(w.real() * in[j].real() - w.imag() * in[j].imag(),
                  w.real() * in[j].imag() + w.imag() * in[j].real());
    }
    out[s] = acc;
  }
}

void ModeTransform::to_grid(const cplx* modes, cplx* grid) const {
  const double scale = 1.0 / std::sqrt(2.0 * constants::pi);
  if (pow2_) {
    for (unsigned i = 0; i < m_; ++i) grid[i] = modes[i];
    fft_pow2(grid, /*inverse=*/true);
  } else {
    dft_direct(modes, grid, /*inverse=*/true);
  }
  for (unsigned i = 0; i < m_; ++i) grid[i] *= scale;
}

void ModeTransform::to_modes(const cplx* grid, cplx* modes) const {
  const double scale = std::sqrt(2.0 * constants::pi) / m_;
  if (pow2_) {
    for (unsigned i = 0; i < m_; ++i) modes[i] = grid[i];
    fft_pow2(modes, /*inverse=*/false);
  } else {
    dft_direct(grid, modes, /*inverse=*/false);
  }
  for (unsigned i = 0; i < m_; ++i) modes[i] *= scale;
}

}
