#pragma once

#include <vector>

#include "ringsqueeze/field.hpp"

namespace ringsqueeze {

/// Wigner-sample pseudo-spin values of one trajectory (no ordering
/// corrections applied). The spinor weighting pairs mode k of m_F=+1 with
/// mode k-2l of m_F=-1:
///   jx =  sum_k Re(conj(a_k) b_{k-2l}),  jy = -sum_k Im(conj(a_k) b_{k-2l}),
///   jz = (sum|a|^2 - sum|b|^2)/2,        n[c] = sum_k |amp_{c,k}|^2.
struct TrajectoryStats {
  double jx = 0.0, jy = 0.0, jz = 0.0;
  double n[3] = {0.0, 0.0, 0.0};
};

TrajectoryStats trajectory_stats(const TrajectoryEnsemble& ens, std::size_t i);

/// Symmetric-ordering-corrected spin moments with batch standard errors.
struct SpinMoments {
  double mean_jx = 0.0, mean_jy = 0.0, mean_jz = 0.0;
  double var_jz = 0.0;      // corrected, clamped at 0
  bool var_jz_clamped = false;
  double j_perp = 0.0;      // sqrt(mean_jx^2 + mean_jy^2)
  double n_comp[3] = {0.0, 0.0, 0.0};  // corrected component totals
  double n_total = 0.0;     // detected atoms: n_comp[+1] + n_comp[-1]
  std::vector<double> n_mode;  // corrected per-mode populations, [comp][slot]
  double xi = 0.0;          // sqrt(n_total * var_jz) / j_perp

  double se_jx = 0.0, se_jy = 0.0, se_jz = 0.0;
  double se_var_jz = 0.0, se_xi = 0.0, se_n_total = 0.0;

  std::size_t n_traj = 0;
  double tau = 0.0;
};

/// Ensemble estimates. Ordering corrections: 1/2 per active mode off every
/// population; (m_active(+1) + m_active(-1))/16 off Var(jz) (the same-mode
/// quarter-variances of the Wigner samples; pinned against the Fock oracle in
/// the tests). Accumulation is serial in trajectory order, so results do not
/// depend on threading. Throws when n_traj < 2.
SpinMoments estimate_moments(const TrajectoryEnsemble& ens, unsigned batch_count = 16);

/// Ensemble-mean corrected component populations (the inputs to Zeeman
/// tracking), reduced serially in trajectory order.
void mean_corrected_populations(const TrajectoryEnsemble& ens, double out[3]);

}
