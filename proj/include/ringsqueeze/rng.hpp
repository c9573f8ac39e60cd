#pragma once

#include <array>
#include <cstdint>

namespace ringsqueeze {

/// Philox4x64-10 counter-based generator (Salmon et al., matches numpy's
/// Philox bit stream). Stateless per block: the stream is fully determined by
/// (key, counter), which is what makes per-trajectory sampling reproducible
/// and order-independent.
struct Philox4x64 {
  std::array<std::uint64_t, 2> key;

  static std::array<std::uint64_t, 4> block(const std::array<std::uint64_t, 2>& key,
                                            const std::array<std::uint64_t, 4>& counter);
};

/// Standard-normal draws for one trajectory, keyed by (master_seed,
/// trajectory_index, block counter). Box-Muller over Philox uniforms.
class GaussianStream {
 public:
  GaussianStream(std::uint64_t master_seed, std::uint64_t trajectory_index);

  double next();

 private:
  void refill();

  std::array<std::uint64_t, 2> key_;
  std::uint64_t block_ = 0;
  std::array<double, 4> cache_{};
  unsigned cached_ = 0;
};

}
