#pragma once

// Data-parallel inner loops of prime-field polynomial arithmetic.
//
// Each kernel has a portable scalar reference and an AVX2 variant. The AVX2
// variant works in double precision and requires p < kMaxVectorModulus so that
// s * a + b stays below 2^53; larger moduli always take the scalar path.

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace dnash::simd {

inline constexpr std::uint32_t kMaxVectorModulus = 1u << 26;

enum class Isa { Scalar, Avx2 };

struct ModpKernels {
  /// dst[j] = (dst[j] + s * src[j]) mod p, inputs reduced.
  void (*axpy)(std::uint32_t* dst, const std::uint32_t* src, std::size_t n, std::uint32_t s, std::uint32_t p);
  /// dst[j] = (s * dst[j]) mod p.
  void (*scale)(std::uint32_t* dst, std::size_t n, std::uint32_t s, std::uint32_t p);
};

bool isa_available(Isa isa);
const ModpKernels& kernels_for(Isa isa);

/// Best kernel set for this CPU. DNASH_KERNEL=scalar in the environment forces the
/// reference path.
Isa active_isa();
const ModpKernels& kernels();

std::string_view isa_name(Isa isa);

namespace detail {
const ModpKernels& scalar_kernels();
const ModpKernels& avx2_kernels();
}  // namespace detail

}  // namespace dnash::simd
