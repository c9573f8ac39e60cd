#pragma once

#include <vector>

#include "ringsqueeze/constants.hpp"

namespace ringsqueeze::analytic {

/// Undepleted-pump two-mode state after seeding and a resonant spin-exchange
/// window: a(r) = a cosh r + i b^dag sinh r on the pair (+1,+l), (-1,-l),
/// starting from coherent amplitudes alpha = -i e^{i chi} sqrt(N_seed).
struct TwoModeState {
  double squeeze_r = 0.0;   // r = -(c2~ N0 / L) * tau_prep >= 0
  double seed_phase = 3.0 * constants::pi / 4.0;  // chi
  double seed_number = 0.0; // N_seed in each of the two modes
  double pump_number = 0.0; // N0

  void validate() const;  // throws config_error
};

/// cosh(2r) - sin(2chi) sinh(2r); the stimulated amplification factor.
double stimulated_factor(double r, double chi);

/// Atoms per m_F = +-1 mode: sinh^2 r + stimulated_factor * N_seed.
/// Valid only while the result stays << N0.
double mode_population(const TwoModeState& s);
double mode_population(double r, double chi, double n_seed);

/// Perpendicular spin length N_seed * |cosh 2r - sin 2chi sinh 2r|, i.e. the
/// stimulated part of the transfer (mode_population minus the sinh^2 r vacuum
/// growth).
double perpendicular_spin(const TwoModeState& s);
double perpendicular_spin(double r, double chi, double n_seed);

/// Wineland parameter of the prepared pair. Requires N_seed > 0 (an unseeded
/// state has no spin length). At chi = 3pi/4 this reduces to
/// sqrt(e^{-4r} sinh^2 r / N_seed + e^{-2r}); evaluated in overflow-safe form.
double wineland_xi(const TwoModeState& s);
double wineland_xi(double r, double chi, double n_seed);

/// Seed threshold for squeezing: wineland_xi < 1 iff N_seed exceeds
/// (1/2) e^{-3r} sinh r.
double min_seed_for_squeezing(double r);

/// r that puts half of n_total atoms in each +-1 mode (undepleted estimate,
/// chi = 3pi/4). Requires n_total >= 2 n_seed.
double optimal_r(double n_total, double n_seed);

/// Best sensitivity normalised to the Heisenberg limit, xi_HL = sqrt(N_t) xi
/// at optimal_r, and its N_t-free large-N_t form (1 + 4 N_seed)/sqrt(8 N_seed).
double heisenberg_xi(double n_total, double n_seed);
double heisenberg_xi_approx(double n_seed);

/// Interrogation-time beat frequencies (2 k l - 2 l^2) in units of omega for
/// the requested mode indices; zero iff k == l.
std::vector<double> interrogation_frequencies(int l, const std::vector<int>& modes);
double interrogation_frequency(int l, int k);

/// Variance contribution <A_k A_k> = sinh^2(2 r_k) / 8 of an unseeded mode
/// pair during interrogation.
double unseeded_variance_term(double r_k);

}
