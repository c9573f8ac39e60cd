#include "fock_oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace fock {

namespace {

using cplx = std::complex<double>;

double sector_norm(const std::vector<cplx>& v) {
  double s = 0.0;
  for (const cplx& z : v) s += std::norm(z);
  return s;
}

/// w = exp(i r T) v for real symmetric tridiagonal T with zero diagonal and
/// off-diagonal off[n] between rows n and n+1.
std::vector<cplx> expi_tridiag(const std::vector<double>& off, double r,
                               std::vector<cplx> v) {
  const std::size_t n = v.size();
  double norm1 = 0.0;  // max row sum
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    if (i > 0) row += std::abs(off[i - 1]);
    if (i + 1 < n) row += std::abs(off[i]);
    norm1 = std::max(norm1, row);
  }
  const double theta = 3.0;  // Taylor segment size, well inside double range
  const int substeps = std::max(1, static_cast<int>(std::ceil(std::abs(r) * norm1 / theta)));
  const cplx step = cplx(0.0, r / substeps);

  std::vector<cplx> term(n), next(n), acc(n);
  for (int s = 0; s < substeps; ++s) {
    acc = v;
    term = v;
    for (int k = 1; k <= 80; ++k) {
      // next = (step / k) * T * term
      for (std::size_t i = 0; i < n; ++i) {
        cplx t = 0.0;
        if (i > 0) t += off[i - 1] * term[i - 1];
        if (i + 1 < n) t += off[i] * term[i + 1];
        next[i] = step / static_cast<double>(k) * t;
      }
      term.swap(next);
      double tn = 0.0, an = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        acc[i] += term[i];
        tn += std::norm(term[i]);
        an += std::norm(acc[i]);
      }
      if (tn <= 1e-34 * std::max(an, 1e-300)) break;
      if (k == 80) throw std::runtime_error("fock oracle: Taylor did not converge");
    }
    v = acc;
  }
  return v;
}

}  // namespace

TwoModeSqueezedState::TwoModeSqueezedState(double n_seed, double chi, double r,
                                           int n_max, int d_max)
    : n_max_(n_max), d_max_(d_max), sectors_(2 * d_max + 1) {
  if (n_seed < 0.0 || n_max < 2 || d_max < 0)
    throw std::invalid_argument("fock oracle: bad arguments");

  // coherent amplitudes c_n = e^{-|alpha|^2/2} alpha^n / sqrt(n!)
  const cplx alpha = cplx(0.0, -1.0) * std::exp(cplx(0.0, chi)) * std::sqrt(n_seed);
  const int c_len = n_max + d_max + 2;
  std::vector<cplx> c(c_len);
  c[0] = std::exp(-0.5 * n_seed);
  for (int n = 1; n < c_len; ++n) c[n] = c[n - 1] * alpha / std::sqrt(static_cast<double>(n));

  for (int d = -d_max; d <= d_max; ++d) {
    auto& v = sectors_[d + d_max];
    v.assign(n_max + 1, cplx(0.0, 0.0));
    for (int n = 0; n <= n_max_; ++n) {
      const int na = n + std::max(d, 0);
      const int nb = n + std::max(-d, 0);
      v[n] = c[na] * c[nb];
    }
    if (sector_norm(v) < 1e-300) continue;  // empty sector stays empty
    std::vector<double> off(n_max_);
    for (int n = 0; n < n_max_; ++n)
      off[n] = std::sqrt(static_cast<double>(n + 1) *
                         static_cast<double>(n + 1 + std::abs(d)));
    v = expi_tridiag(off, r, std::move(v));
  }
}

cplx TwoModeSqueezedState::amp(int na, int nb) const {
  if (na < 0 || nb < 0) return 0.0;
  const int d = na - nb;
  if (std::abs(d) > d_max_) return 0.0;
  const int n = std::min(na, nb);
  if (n > n_max_) return 0.0;
  return sectors_[d + d_max_][n];
}

double TwoModeSqueezedState::norm() const {
  double s = 0.0;
  for (const auto& v : sectors_) s += sector_norm(v);
  return s;
}

double TwoModeSqueezedState::truncation_tail() const {
  double s = 0.0;
  for (const auto& v : sectors_) {
    s += std::norm(v[n_max_]);
    if (n_max_ >= 1) s += std::norm(v[n_max_ - 1]);
  }
  s += sector_norm(sectors_.front());
  s += sector_norm(sectors_.back());
  return s;
}

double TwoModeSqueezedState::number_a() const {
  double s = 0.0;
  for (int d = -d_max_; d <= d_max_; ++d) {
    const auto& v = sectors_[d + d_max_];
    for (int n = 0; n <= n_max_; ++n) s += (n + std::max(d, 0)) * std::norm(v[n]);
  }
  return s;
}

double TwoModeSqueezedState::number_b() const {
  double s = 0.0;
  for (int d = -d_max_; d <= d_max_; ++d) {
    const auto& v = sectors_[d + d_max_];
    for (int n = 0; n <= n_max_; ++n) s += (n + std::max(-d, 0)) * std::norm(v[n]);
  }
  return s;
}

double TwoModeSqueezedState::var_number_a() const {
  double m1 = 0.0, m2 = 0.0;
  for (int d = -d_max_; d <= d_max_; ++d) {
    const auto& v = sectors_[d + d_max_];
    for (int n = 0; n <= n_max_; ++n) {
      const double na = n + std::max(d, 0);
      const double p = std::norm(v[n]);
      m1 += na * p;
      m2 += na * na * p;
    }
  }
  return m2 - m1 * m1;
}

double TwoModeSqueezedState::mean_jz() const {
  double s = 0.0;
  for (int d = -d_max_; d <= d_max_; ++d)
    s += 0.5 * d * sector_norm(sectors_[d + d_max_]);
  return s;
}

double TwoModeSqueezedState::var_jz() const {
  double m1 = 0.0, m2 = 0.0;
  for (int d = -d_max_; d <= d_max_; ++d) {
    const double p = sector_norm(sectors_[d + d_max_]);
    m1 += 0.5 * d * p;
    m2 += 0.25 * d * d * p;
  }
  return m2 - m1 * m1;
}

cplx TwoModeSqueezedState::adag_b() const {
  // <psi| a^dag b |psi> = sum conj(psi_{na+1, nb-1}) sqrt((na+1) nb) psi_{na, nb}
  cplx s = 0.0;
  for (int d = -d_max_; d <= d_max_; ++d) {
    const auto& v = sectors_[d + d_max_];
    for (int n = 0; n <= n_max_; ++n) {
      const int na = n + std::max(d, 0);
      const int nb = n + std::max(-d, 0);
      if (nb < 1) continue;
      const cplx target = amp(na + 1, nb - 1);
      if (target == cplx(0.0, 0.0)) continue;
      s += std::conj(target) * std::sqrt(static_cast<double>(na + 1) * nb) * v[n];
    }
  }
  return s;
}

double TwoModeSqueezedState::j_perp() const { return std::abs(adag_b()); }

double TwoModeSqueezedState::xi() const {
  const double nt = number_a() + number_b();
  return std::sqrt(nt * var_jz()) / j_perp();
}

}
