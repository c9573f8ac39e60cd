#pragma once

#include <optional>
#include <string>

#include "ringsqueeze/config_file.hpp"
#include "ringsqueeze/sequence.hpp"

namespace ringsqueeze {

/// CLI-level knobs that override the config file.
struct RunOverrides {
  std::optional<std::uint64_t> master_seed;
  std::optional<std::size_t> n_traj;
  int threads = 0;  // 0: env/hardware
  std::string out_path;
};

/// Runs one named experiment and writes its output file (CSV for sweeps,
/// JSON for the single custom sequence). Rerunning with the same config and
/// seed produces byte-identical output at any worker count. Returns the
/// output path.
std::string run_experiment(const std::string& name, const SimulationConfig& cfg,
                           const RunOverrides& overrides);

bool is_known_experiment(const std::string& name);

}
