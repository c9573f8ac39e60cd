#include "ringsqueeze/field.hpp"

#include <cmath>

#include "ringsqueeze/errors.hpp"
#include "ringsqueeze/rng.hpp"

namespace ringsqueeze {

void ModeLayout::validate() const {
  if (m < 2 || m % 2 != 0)
    throw config_error("mode count M must be even and >= 2");
  if (ell < 1) throw config_error("winding number l must be >= 1");
  // +-l and the 2l-shifted pulse band must fit without wrapping onto each other.
  if (m < 2u * (2u * static_cast<unsigned>(ell)) + 2u)
    throw config_error("mode count M must satisfy M >= 2*(2l)+2 for l = " +
                       std::to_string(ell));
}

unsigned ModeLayout::active_slot(unsigned comp) const {
  if (comp == kCompPlus) return slot_of_mode(ell, m);
  if (comp == kCompMinus) return slot_of_mode(-ell, m);
  return slot_of_mode(0, m);
}

TrajectoryEnsemble sample_initial(double atom_number, const ModeLayout& layout,
                                  std::size_t n_traj, std::uint64_t master_seed) {
  layout.validate();
  if (n_traj < 1) throw config_error("n_traj must be >= 1");
  if (!(atom_number >= 1.0)) throw config_error("atom_number must be >= 1");

  TrajectoryEnsemble ens;
  ens.layout = layout;
  ens.master_seed = master_seed;
  ens.pump_coherent = std::sqrt(atom_number);
  ens.amps.assign(n_traj * 3 * layout.m, cplx(0.0, 0.0));

  const unsigned pump_slot = slot_of_mode(0, layout.m);
  for (std::size_t i = 0; i < n_traj; ++i) {
    GaussianStream g(master_seed, i);
    cplx* traj = ens.trajectory(i);
    for (unsigned comp = 0; comp < 3; ++comp) {
      for (unsigned s = 0; s < layout.m; ++s) {
        if (!layout.is_active(comp, s)) continue;
        const double re = 0.5 * g.next();
        const double im = 0.5 * g.next();
        traj[comp * layout.m + s] = cplx(re, im);
      }
    }
    traj[kCompZero * layout.m + pump_slot] += ens.pump_coherent;
  }
  return ens;
}

}
