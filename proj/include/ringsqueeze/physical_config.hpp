#pragma once

#include <cstdint>

#include "ringsqueeze/constants.hpp"

namespace ringsqueeze {

/// Dimensional experiment parameters. Everything downstream runs in the
/// dimensionless frame (theta, tau = omega*t); this struct is the only place
/// SI units appear on the way in.
struct PhysicalConfig {
  double atom_number = 1e5;          // N0, atoms initially in m_F = 0
  double ring_radius_um = 15.0;      // R
  double transverse_area_um2 = 2.33; // A, from integrating out the tight dims
  double scattering_length_s0_bohr = 110.0; // a0
  double scattering_length_s2_bohr = 107.0; // a2
  double atomic_mass_kg = constants::mass_rb87;
  int winding_number = 2;            // l, LG beam winding >= 1

  void validate() const;  // throws config_error
};

/// Couplings and scales of the dimensionless frame.
struct DimensionlessParams {
  double c0_tilde = 0.0;   // spin-independent coupling, c0 / (hbar omega)
  double c2_tilde = 0.0;   // spin-dependent coupling, < 0 for 87Rb
  double omega = 0.0;      // hbar / (m R^2), s^-1; tau = omega * t
  double ring_length = 2.0 * constants::pi;  // coordinate span L

  /// Squeezing growth rate per unit tau at pump number n0: r(tau) = rate*tau.
  double squeeze_rate(double n0) const { return -c2_tilde * n0 / ring_length; }
};

/// c0 = 2 hbar^2 (2 a2 + a0) / (3 R m A), c2 = 2 hbar^2 (a2 - a0) / (3 R m A),
/// made dimensionless with hbar*omega. Throws config_error on invalid input.
DimensionlessParams derive_dimensionless(const PhysicalConfig& config);

}
