#include "ringsqueeze/rng.hpp"

#include <cmath>

#include "ringsqueeze/constants.hpp"

namespace ringsqueeze {

namespace {

constexpr std::uint64_t kMul0 = 0xD2E7470EE14C6C93ULL;
constexpr std::uint64_t kMul1 = 0xCA5A826395121157ULL;
constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;

inline void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi, std::uint64_t& lo) {
  const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  hi = static_cast<std::uint64_t>(p >> 64);
  lo = static_cast<std::uint64_t>(p);
}

}  // namespace

std::array<std::uint64_t, 4> Philox4x64::block(const std::array<std::uint64_t, 2>& key,
                                               const std::array<std::uint64_t, 4>& counter) {
  std::uint64_t k0 = key[0], k1 = key[1];
  std::array<std::uint64_t, 4> c = counter;
  for (int round = 0; round < 10; ++round) {
    std::uint64_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, c[0], hi0, lo0);
    mulhilo(kMul1, c[2], hi1, lo1);
    c = {hi1 ^ c[1] ^ k0, lo1, hi0 ^ c[3] ^ k1, lo0};
    k0 += kWeyl0;
    k1 += kWeyl1;
  }
  return c;
}

GaussianStream::GaussianStream(std::uint64_t master_seed, std::uint64_t trajectory_index)
    : key_{master_seed, trajectory_index} {}

void GaussianStream::refill() {
  const auto w = Philox4x64::block(key_, {block_++, 0, 0, 0});
  auto uniform = [](std::uint64_t x) {
    // (0, 1): 53-bit mantissa, offset away from zero for the log below.
    return (static_cast<double>(x >> 11) + 0.5) * 0x1.0p-53;
  };
  const double u0 = uniform(w[0]), u1 = uniform(w[1]);
  const double u2 = uniform(w[2]), u3 = uniform(w[3]);
  const double r0 = std::sqrt(-2.0 * std::log(u0));
  const double r1 = std::sqrt(-2.0 * std::log(u2));
  cache_[0] = r0 * std::cos(2.0 * constants::pi * u1);
  cache_[1] = r0 * std::sin(2.0 * constants::pi * u1);
  cache_[2] = r1 * std::cos(2.0 * constants::pi * u3);
  cache_[3] = r1 * std::sin(2.0 * constants::pi * u3);
  cached_ = 4;
}

double GaussianStream::next() {
  if (cached_ == 0) refill();
  return cache_[4 - cached_--];
}

}
