#include "dnash/kernels.hpp"

namespace dnash::simd::detail {

namespace {

void axpy_scalar(std::uint32_t* dst, const std::uint32_t* src, std::size_t n, std::uint32_t s, std::uint32_t p) {
  const std::uint64_t sm = s;
  for (std::size_t j = 0; j < n; ++j)
    dst[j] = static_cast<std::uint32_t>((dst[j] + sm * src[j]) % p);
}

void scale_scalar(std::uint32_t* dst, std::size_t n, std::uint32_t s, std::uint32_t p) {
  const std::uint64_t sm = s;
  for (std::size_t j = 0; j < n; ++j) dst[j] = static_cast<std::uint32_t>((sm * dst[j]) % p);
}

}  // namespace

const ModpKernels& scalar_kernels() {
  static const ModpKernels k{&axpy_scalar, &scale_scalar};
  return k;
}

}  // namespace dnash::simd::detail
