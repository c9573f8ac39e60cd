#pragma once

#include <string>

#include "ringsqueeze/field.hpp"

namespace ringsqueeze {

/// Binary ensemble snapshot: header (magic "RSQZCKPT", u32 version, u32 M,
/// u64 n_traj, u64 master_seed, f64 tau), then n_traj * 3 * M little-endian
/// complex64 (float re, float im) amplitudes, components in (+1, 0, -1)
/// order, modes ascending k = -M/2 .. M/2-1.
void write_checkpoint(const std::string& path, const TrajectoryEnsemble& ens);

/// Reads a checkpoint written by write_checkpoint; layout supplies l and the
/// single-mode flag (the header pins M, which must match).
TrajectoryEnsemble read_checkpoint(const std::string& path, const ModeLayout& layout);

}
