#include "ringsqueeze/physical_config.hpp"

#include <cmath>
#include <string>

#include "ringsqueeze/errors.hpp"

namespace ringsqueeze {

void PhysicalConfig::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw config_error(std::string(name) + " must be strictly positive");
  };
  positive(ring_radius_um, "ring_radius_um");
  positive(transverse_area_um2, "transverse_area_um2");
  positive(atomic_mass_kg, "atomic_mass_kg");
  positive(scattering_length_s0_bohr, "scattering_length_s0_bohr");
  positive(scattering_length_s2_bohr, "scattering_length_s2_bohr");
  if (!(atom_number >= 1.0))
    throw config_error("atom_number must be >= 1");
  if (winding_number < 1)
    throw config_error("winding_number must be >= 1");
}

DimensionlessParams derive_dimensionless(const PhysicalConfig& config) {
  config.validate();
  const double R = config.ring_radius_um * 1e-6;
  const double A = config.transverse_area_um2 * 1e-12;
  const double m = config.atomic_mass_kg;
  const double a0 = config.scattering_length_s0_bohr * constants::bohr_radius;
  const double a2 = config.scattering_length_s2_bohr * constants::bohr_radius;

  DimensionlessParams out;
  out.omega = constants::hbar / (m * R * R);
  const double denom = 3.0 * R * m * A;
  const double c0 = 2.0 * constants::hbar * constants::hbar * (2.0 * a2 + a0) / denom;
  const double c2 = 2.0 * constants::hbar * constants::hbar * (a2 - a0) / denom;
  out.c0_tilde = c0 / (constants::hbar * out.omega);
  out.c2_tilde = c2 / (constants::hbar * out.omega);
  return out;
}

}
