#pragma once

#include "ringsqueeze/field.hpp"
#include "ringsqueeze/kernels.hpp"
#include "ringsqueeze/moments.hpp"
#include "ringsqueeze/physical_config.hpp"
#include "ringsqueeze/schedule.hpp"
#include "ringsqueeze/thread_pool.hpp"

namespace ringsqueeze {

/// Fixed-step control for the RK4 interaction-picture integrator. dt_tau > 0
/// pins the step; otherwise the step is derived from the RK4 norm-drift bound
/// (V dt)^6/144 per step so that the relative number drift per unit tau stays
/// below norm_tol.
struct StepControl {
  double dt_tau = 0.0;
  double norm_tol = 1e-8;
  double safety = 0.7;
  double max_dt = 5e-4;

  double resolve(double phase_rate_estimate) const;
};

/// One integrable stretch of the schedule, in dimensionless units.
struct SegmentDynamics {
  double duration_tau = 0.0;
  double coupling_scale = 1.0;           // multiplies both c0~ and c2~
  ZeemanMode zeeman = ZeemanMode::off;
  double zeeman_fixed = 0.0;             // dimensionless, mode == fixed
  // optional Raman drive inside the drift (finite-duration pulses)
  bool drive_seed = false;
  bool drive_bs = false;
  double drive_rate = 0.0;               // lambda per unit tau
  double drive_phase = 0.0;              // chi (seed) or phi (beam splitter)
};

/// delta_Z~ keeping the pair collision resonant:
/// (c2~/L)(N_+1 + N_-1 - N_0) - l^2/2, from Eq.-level energy conservation with
/// mean-field energies evaluated at the given populations.
double zeeman_delta(const DimensionlessParams& params, int ell, double n_plus,
                    double n_zero, double n_minus);

/// Tracked value for the current ensemble (corrected mean populations).
double tracked_zeeman(const TrajectoryEnsemble& ens, const DimensionlessParams& params);

/// Advance every trajectory through one segment. Tracked Zeeman windows run
/// in lockstep (delta_Z recomputed each step from a serial trajectory-order
/// reduction); all other segments evolve trajectories independently. Throws
/// integration_diverged on NaN/Inf amplitudes.
void evolve(TrajectoryEnsemble& ens, const DimensionlessParams& params,
            const SegmentDynamics& seg, const StepControl& step, ThreadPool& pool);

/// Instantaneous displacement seeding: amps(+1,+l) and (-1,-l) shift by
/// -i e^{i chi} sqrt(n_seed); the pump's coherent amplitude drops to conserve
/// the mean total number.
void seed_pulse(TrajectoryEnsemble& ens, double n_seed, double chi);

/// Instantaneous Raman pulse: for every k, mixes (+1, k) with (-1, k-2l)
/// (indices modulo M, the discrete form of the e^{i 2 l theta} phase factor)
/// with beam phase phi. Exactly unitary per trajectory.
void apply_raman_pulse(TrajectoryEnsemble& ens, PulseAngle angle, double phi,
                       ThreadPool& pool);

/// Dispersion-only advance by duration_tau (exact, used when all couplings,
/// Zeeman shifts and drives vanish).
void free_dispersion(TrajectoryEnsemble& ens, double duration_tau, ThreadPool& pool);

}
