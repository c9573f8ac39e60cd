#include "ringsqueeze/analytic.hpp"

#include <cmath>

#include "ringsqueeze/errors.hpp"

namespace ringsqueeze::analytic {

void TwoModeState::validate() const {
  if (!(squeeze_r >= 0.0)) throw config_error("squeeze_r must be >= 0");
  if (!(seed_number >= 0.0)) throw config_error("seed_number must be >= 0");
}

double stimulated_factor(double r, double chi) {
  return std::cosh(2.0 * r) - std::sin(2.0 * chi) * std::sinh(2.0 * r);
}

double mode_population(double r, double chi, double n_seed) {
  const double sh = std::sinh(r);
  return sh * sh + stimulated_factor(r, chi) * n_seed;
}
double mode_population(const TwoModeState& s) {
  s.validate();
  return mode_population(s.squeeze_r, s.seed_phase, s.seed_number);
}

double perpendicular_spin(double r, double chi, double n_seed) {
  return std::abs(stimulated_factor(r, chi)) * n_seed;
}
double perpendicular_spin(const TwoModeState& s) {
  s.validate();
  return perpendicular_spin(s.squeeze_r, s.seed_phase, s.seed_number);
}

double wineland_xi(double r, double chi, double n_seed) {
  if (!(n_seed > 0.0))
    throw config_error("wineland_xi: undefined spin length for N_seed = 0");
  const double s2chi = std::sin(2.0 * chi);
  if (s2chi == -1.0) {
    // chi = 3pi/4 branch: e^{-4r} sinh^2 r = ((e^{-r} - e^{-3r})/2)^2 stays finite
    // for any r.
    const double t = 0.5 * (std::exp(-r) - std::exp(-3.0 * r));
    return std::sqrt(t * t / n_seed + std::exp(-2.0 * r));
  }
  const double S = stimulated_factor(r, chi);
  const double t = std::sinh(r) / S;
  return std::sqrt(t * t / n_seed + 1.0 / S);
}
double wineland_xi(const TwoModeState& s) {
  s.validate();
  return wineland_xi(s.squeeze_r, s.seed_phase, s.seed_number);
}

double min_seed_for_squeezing(double r) {
  if (!(r >= 0.0)) throw config_error("min_seed_for_squeezing: r must be >= 0");
  return 0.5 * std::exp(-3.0 * r) * std::sinh(r);
}

double optimal_r(double n_total, double n_seed) {
  if (!(n_seed >= 0.0)) throw config_error("optimal_r: n_seed must be >= 0");
  if (n_total < 2.0 * n_seed)
    throw config_error("optimal_r: infeasible, n_total < 2 n_seed");
  const double disc = n_total * (n_total + 2.0) - 4.0 * n_seed;
  return 0.5 * std::log((std::sqrt(disc) + n_total + 1.0) / (4.0 * n_seed + 1.0));
}

double heisenberg_xi(double n_total, double n_seed) {
  if (!(n_seed > 0.0)) throw config_error("heisenberg_xi: n_seed must be > 0");
  if (n_total < 2.0 * n_seed)
    throw config_error("heisenberg_xi: infeasible, n_total < 2 n_seed");
  const double disc = n_total * (n_total + 2.0) - 4.0 * n_seed;
  return n_total * (4.0 * n_seed + 1.0) /
         (std::sqrt(2.0 * n_seed) * (std::sqrt(disc) + n_total + 1.0));
}

double heisenberg_xi_approx(double n_seed) {
  if (!(n_seed > 0.0)) throw config_error("heisenberg_xi_approx: n_seed must be > 0");
  return (1.0 + 4.0 * n_seed) / std::sqrt(8.0 * n_seed);
}

double interrogation_frequency(int l, int k) {
  if (l < 1) throw config_error("interrogation_frequency: l must be >= 1");
  return 2.0 * static_cast<double>(k) * l - 2.0 * static_cast<double>(l) * l;
}

std::vector<double> interrogation_frequencies(int l, const std::vector<int>& modes) {
  std::vector<double> out;
  out.reserve(modes.size());
  for (int k : modes) out.push_back(interrogation_frequency(l, k));
  return out;
}

double unseeded_variance_term(double r_k) {
  if (!(r_k >= 0.0)) throw config_error("unseeded_variance_term: r_k must be >= 0");
  const double s = std::sinh(2.0 * r_k);
  return s * s / 8.0;
}

}
