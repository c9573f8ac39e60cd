#include "ringsqueeze/checkpoint.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>

#include "ringsqueeze/errors.hpp"

namespace ringsqueeze {

namespace {

constexpr char kMagic[8] = {'R', 'S', 'Q', 'Z', 'C', 'K', 'P', 'T'};
constexpr std::uint32_t kVersion = 1;

template <class T>
void put(std::ofstream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

template <class T>
T get(std::ifstream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(v));
  return v;
}

}  // namespace

void write_checkpoint(const std::string& path, const TrajectoryEnsemble& ens) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw simulation_error("cannot open checkpoint for writing: " + path);
  out.write(kMagic, sizeof(kMagic));
  put<std::uint32_t>(out, kVersion);
  put<std::uint32_t>(out, ens.layout.m);
  put<std::uint64_t>(out, ens.n_traj());
  put<std::uint64_t>(out, ens.master_seed);
  put<double>(out, ens.tau);

  const unsigned m = ens.layout.m;
  std::vector<float> row(2 * m);
  for (std::size_t i = 0; i < ens.n_traj(); ++i) {
    for (unsigned c = 0; c < 3; ++c) {
      const cplx* comp = ens.component(i, c);
      for (unsigned j = 0; j < m; ++j) {
        const int k = -static_cast<int>(m) / 2 + static_cast<int>(j);
        const cplx v = comp[slot_of_mode(k, m)];
        row[2 * j] = static_cast<float>(v.real());
        row[2 * j + 1] = static_cast<float>(v.imag());
      }
      out.write(reinterpret_cast<const char*>(row.data()),
                static_cast<std::streamsize>(row.size() * sizeof(float)));
    }
  }
  if (!out) throw simulation_error("short write on checkpoint: " + path);
}

TrajectoryEnsemble read_checkpoint(const std::string& path, const ModeLayout& layout) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw simulation_error("cannot open checkpoint: " + path);
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw simulation_error("not a ringsqueeze checkpoint: " + path);
  const auto version = get<std::uint32_t>(in);
  if (version != kVersion)
    throw simulation_error("unsupported checkpoint version " + std::to_string(version));
  const auto m = get<std::uint32_t>(in);
  const auto n_traj = get<std::uint64_t>(in);
  const auto master_seed = get<std::uint64_t>(in);
  const auto tau = get<double>(in);
  if (m != layout.m)
    throw simulation_error("checkpoint mode count " + std::to_string(m) +
                           " does not match layout M=" + std::to_string(layout.m));

  TrajectoryEnsemble ens;
  ens.layout = layout;
  ens.master_seed = master_seed;
  ens.tau = tau;
  ens.amps.assign(n_traj * 3 * m, cplx(0.0, 0.0));
  std::vector<float> row(2 * m);
  for (std::size_t i = 0; i < n_traj; ++i) {
    for (unsigned c = 0; c < 3; ++c) {
      in.read(reinterpret_cast<char*>(row.data()),
              static_cast<std::streamsize>(row.size() * sizeof(float)));
      if (!in) throw simulation_error("truncated checkpoint payload: " + path);
      cplx* comp = ens.component(i, c);
      for (unsigned j = 0; j < m; ++j) {
        const int k = -static_cast<int>(m) / 2 + static_cast<int>(j);
        comp[slot_of_mode(k, m)] = cplx(row[2 * j], row[2 * j + 1]);
      }
    }
  }
  return ens;
}

}
