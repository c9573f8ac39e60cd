#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ringsqueeze/engine.hpp"

namespace ringsqueeze {

enum class Backend { analytic, smtwa, mmtwa };

Backend backend_from_name(const std::string& name);

struct SequenceOptions {
  unsigned modes = 16;
  std::size_t n_traj = 1000;
  std::uint64_t master_seed = 1234;
  StepControl step;
  unsigned batch_count = 16;
  double fd_delta_phi = 1e-2;  // rad, symmetric finite difference for the slope
};

/// One interrogation-time sample of the output-state metrology figures.
struct XiPoint {
  double T_s = 0.0;
  double tau = 0.0;
  double xi = 0.0;
  double xi_se = 0.0;
  double n_t = 0.0;
  double delta_phi = 0.0;
  double delta_omega = 0.0;
};

struct InterferometerResult {
  double phi_readout = 0.0;     // fringe phase applied at the closing pulse
  double interrogation_s = 0.0; // total free-evolution time T

  double signal_mean = 0.0, signal_se = 0.0;      // <Jz(t_f)>
  double signal_var = 0.0, signal_var_se = 0.0;   // Var(Jz(t_f)), corrected
  bool var_clamped = false;
  double fringe_slope = 0.0, fringe_slope_se = 0.0;  // d<Jz>/dphi
  double delta_phi = 0.0, delta_phi_se = 0.0;
  double delta_omega = 0.0, delta_omega_se = 0.0;
  double xi_readout = 0.0, xi_readout_se = 0.0;   // sqrt(N_t) * delta_phi
  double n_t = 0.0;

  double j_perp_input = 0.0;  // prepared-state spin length (static during T)
  double xi_input = 0.0;      // prepared-state Wineland parameter

  std::vector<XiPoint> xi_series;

  std::string to_json() const;
};

/// Executes the schedule on the chosen backend. The analytic backend accepts
/// only the canonical (instantaneous) seed/squeeze/pi2/free/pi2 shape and
/// reports the phase uncertainty at readout phases phi = n pi. The TWA
/// backends estimate the fringe slope by symmetric finite difference with
/// common random numbers (the +- delta readouts reuse the same trajectories).
InterferometerResult run_sequence(const PhysicalConfig& phys, const PulseSchedule& schedule,
                                  Backend backend, const SequenceOptions& opts,
                                  ThreadPool& pool);

/// Delta phi = sqrt(Var Jz) / |slope|; throws simulation_error when the slope
/// is indistinguishable from zero.
double phase_uncertainty(const InterferometerResult& result);

/// Delta Omega = delta_phi / (2 l T); throws config_error for T <= 0.
double rotation_uncertainty(double delta_phi, int ell, double interrogation_s);

struct PrepSpec {
  double n_seed = 0.0;
  double chi = 3.0 * constants::pi / 4.0;
  double t_prep_s = 0.0;
  ZeemanMode zeeman = ZeemanMode::tracked;
  double zeeman_fixed = 0.0;
};

struct InterrogationSpec {
  double rotation_rate_rad_s = 0.0;
  double interaction_scale = 0.0;  // delta c2 during T
};

/// xi(T) over an ascending grid: prep -> pi/2 -> free(T) -> pi/2 -> readout,
/// advancing one ensemble through the grid and reading out on copies.
/// prep_out (optional) receives the prepared-state moments.
std::vector<XiPoint> xi_vs_interrogation(const PhysicalConfig& phys, const PrepSpec& prep,
                                         const std::vector<double>& T_grid_s,
                                         const InterrogationSpec& interrogation,
                                         Backend backend, const SequenceOptions& opts,
                                         ThreadPool& pool, SpinMoments* prep_out = nullptr);

}
