#include "ringsqueeze/kernels.hpp"

#include <cstdlib>
#include <string>

#include "ringsqueeze/errors.hpp"

namespace ringsqueeze::kernels {

bool cpu_has_avx2() {
#if defined(RINGSQUEEZE_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

namespace {

const Table& select() {
  const char* env = std::getenv("RINGSQUEEZE_SIMD");
  const std::string mode = env ? env : "auto";
  if (mode == "scalar") return scalar_table();
#ifdef RINGSQUEEZE_HAVE_AVX2
  if (mode == "avx2") {
    if (!cpu_has_avx2())
      throw simulation_error("RINGSQUEEZE_SIMD=avx2 requested but the CPU lacks AVX2");
    return avx2_table();
  }
  if (mode == "auto" && cpu_has_avx2()) return avx2_table();
#else
  if (mode == "avx2")
    throw simulation_error("RINGSQUEEZE_SIMD=avx2 requested but this build has no AVX2 backend");
#endif
  if (mode != "auto" && mode != "scalar" && mode != "avx2")
    throw simulation_error("unknown RINGSQUEEZE_SIMD value: " + mode);
  return scalar_table();
}

}  // namespace

const Table& active() {
  static const Table& t = select();
  return t;
}

}
