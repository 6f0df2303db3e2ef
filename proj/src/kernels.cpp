#include "igmd/kernels.hpp"

#include <cstdlib>
#include <string>

#include "igmd/errors.hpp"

namespace igmd::kernels {

// Defined in kernels_avx2.cpp; true when that unit was built with AVX2.
bool avx2_compiled_in();

bool avx2_available() {
#if defined(__x86_64__) || defined(__i386__)
  return avx2_compiled_in() && __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const Backend& active_backend() {
  static const Backend& chosen = []() -> const Backend& {
    const char* env = std::getenv("IGMD_KERNELS");
    if (env != nullptr) {
      std::string want(env);
      if (want == "scalar") return scalar_backend();
      if (want == "avx2") {
        if (!avx2_available())
          throw numeric_error("IGMD_KERNELS=avx2 requested but not available");
        return avx2_backend();
      }
      throw numeric_error("unknown IGMD_KERNELS value '" + want + "'");
    }
    return avx2_available() ? avx2_backend() : scalar_backend();
  }();
  return chosen;
}

}  // namespace igmd::kernels
