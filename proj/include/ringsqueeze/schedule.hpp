#pragma once

#include <string>
#include <variant>
#include <vector>

#include "ringsqueeze/constants.hpp"
#include "ringsqueeze/physical_config.hpp"

namespace ringsqueeze {

// Segment durations are physical seconds; the engine converts with tau = omega*t.

/// Coherent transfer of n_seed atoms into each of (+1,+l) and (-1,-l).
/// duration_s == 0 selects the instantaneous displacement limit; > 0 runs the
/// Raman coupling inside the drift (convergence checks).
struct SeedPulse {
  double n_seed = 0.0;
  double chi = 3.0 * constants::pi / 4.0;  // seed phase relative to the pump
  double duration_s = 0.0;
};

enum class ZeemanMode { tracked, fixed, off };

/// Resonant spin-exchange window; zeeman_mode controls how delta_Z follows the
/// mean-field shifts.
struct SqueezeWindow {
  double duration_s = 0.0;
  ZeemanMode zeeman_mode = ZeemanMode::tracked;
  double zeeman_fixed = 0.0;  // dimensionless delta_Z, used when mode == fixed
};

enum class PulseAngle { half_pi, pi };

/// LG-beam Raman coupling between (+1,k) and (-1,k-2l). beam_rotation is the
/// beam-frame angle Phi; the applied fringe phase is phi = 2*l*(Phi_accumulated
/// + beam_rotation). duration_s == 0 applies the instantaneous unitary.
struct RamanPulse {
  PulseAngle angle = PulseAngle::half_pi;
  double beam_rotation = 0.0;
  double duration_s = 0.0;
};

/// Interrogation segment. rotation_rate_rad_s feeds the accumulated beam
/// rotation Phi = integral Omega dt; interaction_scale multiplies both c0 and
/// c2 (transverse-area relaxation).
struct FreeEvolution {
  double duration_s = 0.0;
  double rotation_rate_rad_s = 0.0;
  double interaction_scale = 1.0;  // delta c2 in [0, 1]
};

using Segment = std::variant<SeedPulse, SqueezeWindow, RamanPulse, FreeEvolution>;

struct PulseSchedule {
  std::vector<Segment> segments;

  PulseSchedule& seed(double n_seed, double chi = 3.0 * constants::pi / 4.0,
                      double duration_s = 0.0);
  PulseSchedule& squeeze(double duration_s, ZeemanMode mode = ZeemanMode::tracked,
                         double zeeman_fixed = 0.0);
  PulseSchedule& pulse(PulseAngle angle, double beam_rotation = 0.0,
                       double duration_s = 0.0);
  PulseSchedule& free_evolution(double duration_s, double rotation_rate_rad_s = 0.0,
                                double interaction_scale = 1.0);
};

/// All invariant violations, empty when the schedule is runnable. Checks
/// non-negative durations, interaction_scale in [0,1], the perturbative
/// seeding bound n_seed <= N0/10, and that the schedule does not end inside an
/// open interferometer (a free-evolution segment with no closing pulse).
std::vector<std::string> validate_schedule(const PulseSchedule& schedule,
                                           const PhysicalConfig& config);

/// Canonical interferometer of the protocol: seed -> squeeze -> pi/2 ->
/// free(T) -> pi/2. Zero-duration stages are omitted.
PulseSchedule canonical_schedule(double n_seed, double chi, double t_prep_s,
                                 ZeemanMode zeeman, double zeeman_fixed,
                                 double interrogation_s, double rotation_rate_rad_s,
                                 double interaction_scale, double readout_beam_rotation);

}
