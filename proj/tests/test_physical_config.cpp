#include <doctest.h>

#include <cmath>

#include "ringsqueeze/errors.hpp"
#include "ringsqueeze/physical_config.hpp"

using namespace ringsqueeze;

TEST_CASE("reference config reproduces the pinned dimensionless couplings") {
  const PhysicalConfig cfg;  // defaults are the reference experiment
  const DimensionlessParams p = derive_dimensionless(cfg);

  CHECK(p.c2_tilde == doctest::Approx(-6.82e-4).epsilon(0.01));  // regression pin, 1%
  CHECK(p.c2_tilde == doctest::Approx(-6.81344048e-4).epsilon(1e-8));
  CHECK(p.c0_tilde == doctest::Approx(0.073585157).epsilon(1e-8));
  CHECK(p.omega == doctest::Approx(3.2477223).epsilon(1e-7));
  CHECK(p.ring_length == doctest::Approx(2 * constants::pi));
  CHECK(p.squeeze_rate(1e5) == doctest::Approx(10.84393).epsilon(1e-6));
}

TEST_CASE("hbar and the mass cancel: c2~ equals 2R(a2-a0)/(3A) to 12 digits") {
  PhysicalConfig cfg;
  cfg.ring_radius_um = 22.0;
  cfg.transverse_area_um2 = 1.7;
  cfg.atomic_mass_kg = 3.1e-25;
  const DimensionlessParams p = derive_dimensionless(cfg);
  const double R = cfg.ring_radius_um * 1e-6;
  const double A = cfg.transverse_area_um2 * 1e-12;
  const double da = (cfg.scattering_length_s2_bohr - cfg.scattering_length_s0_bohr) *
                    constants::bohr_radius;
  CHECK(p.c2_tilde == doctest::Approx(2.0 * R * da / (3.0 * A)).epsilon(1e-12));
}

TEST_CASE("coupling ratio depends only on the scattering lengths") {
  PhysicalConfig cfg;
  for (double radius : {5.0, 15.0, 40.0}) {
    for (double area : {1.0, 2.33, 7.5}) {
      cfg.ring_radius_um = radius;
      cfg.transverse_area_um2 = area;
      const DimensionlessParams p = derive_dimensionless(cfg);
      // (2 a2 + a0) / (a2 - a0) = 324 / -3
      CHECK(p.c0_tilde / p.c2_tilde == doctest::Approx(-108.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("equal scattering lengths kill the spin-dependent coupling exactly") {
  PhysicalConfig cfg;
  cfg.scattering_length_s2_bohr = cfg.scattering_length_s0_bohr;
  CHECK(derive_dimensionless(cfg).c2_tilde == 0.0);
}

TEST_CASE("doubling the transverse area halves both couplings") {
  PhysicalConfig cfg;
  const DimensionlessParams p1 = derive_dimensionless(cfg);
  cfg.transverse_area_um2 *= 2.0;
  const DimensionlessParams p2 = derive_dimensionless(cfg);
  CHECK(p2.c0_tilde == doctest::Approx(0.5 * p1.c0_tilde).epsilon(1e-14));
  CHECK(p2.c2_tilde == doctest::Approx(0.5 * p1.c2_tilde).epsilon(1e-14));
}

TEST_CASE("invalid configs are rejected") {
  PhysicalConfig cfg;
  cfg.ring_radius_um = 0.0;
  CHECK_THROWS_AS(derive_dimensionless(cfg), config_error);
  cfg = PhysicalConfig{};
  cfg.transverse_area_um2 = -1.0;
  CHECK_THROWS_AS(derive_dimensionless(cfg), config_error);
  cfg = PhysicalConfig{};
  cfg.atomic_mass_kg = 0.0;
  CHECK_THROWS_AS(derive_dimensionless(cfg), config_error);
  cfg = PhysicalConfig{};
  cfg.atom_number = 0.5;
  CHECK_THROWS_AS(cfg.validate(), config_error);
  cfg = PhysicalConfig{};
  cfg.winding_number = 0;
  CHECK_THROWS_AS(cfg.validate(), config_error);
}
