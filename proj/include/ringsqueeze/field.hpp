#pragma once

#include <cstdint>
#include <vector>

#include "ringsqueeze/fft.hpp"

namespace ringsqueeze {

/// Component index convention everywhere in the engine:
/// 0 -> m_F = +1, 1 -> m_F = 0, 2 -> m_F = -1.
inline constexpr unsigned kCompPlus = 0;
inline constexpr unsigned kCompZero = 1;
inline constexpr unsigned kCompMinus = 2;

/// Mode-space geometry: M angular-momentum modes per component in FFT natural
/// order, winding number l, and an optional restriction to the three
/// interferometer modes (0,0), (+1,+l), (-1,-l) (the single-mode model).
struct ModeLayout {
  unsigned m = 16;
  int ell = 2;
  bool single_mode = false;

  void validate() const;  // throws config_error

  unsigned active_count(unsigned comp) const { return single_mode ? 1u : m; }

  /// Slot of the one active mode of a component (single-mode layout).
  unsigned active_slot(unsigned comp) const;

  bool is_active(unsigned comp, unsigned slot) const {
    return !single_mode || slot == active_slot(comp);
  }
};

/// Stochastic trajectories of the three-component field, flat storage
/// [trajectory][component][slot], amplitudes in the angular-momentum basis.
struct TrajectoryEnsemble {
  ModeLayout layout;
  std::uint64_t master_seed = 0;
  double tau = 0.0;
  /// Deterministic part of the pump amplitude (component 0, k = 0); seed
  /// pulses deplete it to conserve the mean total number.
  double pump_coherent = 0.0;
  std::vector<cplx> amps;

  std::size_t n_traj() const { return layout.m ? amps.size() / (3 * layout.m) : 0; }

  cplx* trajectory(std::size_t i) { return amps.data() + i * 3 * layout.m; }
  const cplx* trajectory(std::size_t i) const { return amps.data() + i * 3 * layout.m; }
  cplx* component(std::size_t i, unsigned comp) { return trajectory(i) + comp * layout.m; }
  const cplx* component(std::size_t i, unsigned comp) const {
    return trajectory(i) + comp * layout.m;
  }
};

/// Wigner samples of an initial state: component 0 coherent with sqrt(N0) in
/// k = 0, components +-1 vacuum; every active mode gets complex Gaussian noise
/// of variance 1/2 (1/4 per quadrature), drawn from the (master_seed,
/// trajectory) Philox stream.
TrajectoryEnsemble sample_initial(double atom_number, const ModeLayout& layout,
                                  std::size_t n_traj, std::uint64_t master_seed);

}
