#include <cstdlib>
#include <stdexcept>
#include <string>

#include "lsw/simd/kernels.hpp"

namespace lsw::simd {

const Kernels& active_kernels() {
  static const Kernels* chosen = [] {
    const char* env = std::getenv("LSW_KERNELS");
    const std::string want = env ? env : "";
    if (want == "scalar") return &scalar_kernels();
    const Kernels* v = avx2_kernels();
    if (want == "avx2") {
      if (!v)
        throw std::runtime_error(
            "LSW_KERNELS=avx2 requested but AVX2+FMA is unavailable");
      return v;
    }
    if (!want.empty())
      throw std::runtime_error("unknown LSW_KERNELS value: " + want);
    return v ? v : &scalar_kernels();
  }();
  return *chosen;
}

}  // namespace lsw::simd
