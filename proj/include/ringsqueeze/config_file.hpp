#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ringsqueeze/physical_config.hpp"
#include "ringsqueeze/schedule.hpp"

namespace ringsqueeze {

/// Everything a run needs, populated from a flat `key = value` config file.
/// Unknown keys are errors; all keys are documented in the README.
struct SimulationConfig {
  PhysicalConfig phys;

  // numerics
  unsigned modes = 16;
  std::size_t n_traj = 1000;
  std::uint64_t master_seed = 1234;
  double dt_tau = 0.0;       // 0 = automatic from norm_tol
  double norm_tol = 1e-8;
  unsigned batch_count = 16;
  double fd_delta_phi_rad = 1e-2;

  // canonical schedule (custom experiment, validate)
  std::string backend = "mmtwa";  // mmtwa | smtwa | analytic
  double seed_number = 10.0;
  double seed_chi_rad = 3.0 * constants::pi / 4.0;
  double t_prep_ms = 0.0;
  ZeemanMode zeeman_mode = ZeemanMode::tracked;
  double zeeman_fixed = 0.0;
  double interrogation_T_ms = 0.0;
  double rotation_rate_rad_s = 0.0;
  double delta_c2_scale = 1.0;
  double readout_beam_rotation_rad = 0.0;
  // mid-interrogation pi pulse; kept selectable although it does not recover
  // the interaction-limited sensitivity
  bool echo_pulse = false;

  // figure presets
  double fig4_r_max = 3.0;
  unsigned fig4_r_points = 61;
  std::vector<double> fig4_seed_grid;  // default: log grid 0.1 .. 1e4
  std::vector<double> fig5_seed_grid = {1, 3, 10, 30, 100, 300, 1000, 3000};
  unsigned fig5_r_points = 12;
  double fig5_r_margin = 1.2;          // scan r up to margin * r_opt
  std::vector<double> fig6_t_prep_ms = {125, 60, 30};
  std::vector<double> fig6_seeds = {100, 5000, 10000};
  double fig6_T_max_s = 1.0;
  unsigned fig6_T_points = 97;
  std::vector<double> fig7_delta_c2 = {0.0, 0.02, 1.0};
  unsigned fig7_T_points = 21;
  double fig7_T_max_s = 1.0;
  double reference_atoms = 1e5;        // SQL/HL reference lines

  PulseSchedule custom_schedule() const;

  /// FNV-1a over the canonical serialization; goes into output provenance.
  std::uint64_t hash() const;
  std::string canonical_text() const;
};

SimulationConfig parse_config_text(const std::string& text);
SimulationConfig load_config_file(const std::string& path);

}
