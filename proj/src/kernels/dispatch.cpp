#include <cstdlib>
#include <string>

#include "dnash/kernels.hpp"

namespace dnash::simd {

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(DNASH_HAVE_AVX2_TU) && (defined(__x86_64__) || defined(__i386__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

const ModpKernels& kernels_for(Isa isa) {
  if (isa == Isa::Avx2 && isa_available(Isa::Avx2)) return detail::avx2_kernels();
  return detail::scalar_kernels();
}

Isa active_isa() {
  static const Isa chosen = [] {
    if (const char* forced = std::getenv("DNASH_KERNEL"); forced && std::string(forced) == "scalar")
      return Isa::Scalar;
    return isa_available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
  }();
  return chosen;
}

const ModpKernels& kernels() { return kernels_for(active_isa()); }

std::string_view isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

}  // namespace dnash::simd
