// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.
#include "dnash/kernels.hpp"

#if defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>
#endif

namespace dnash::simd::detail {

#if defined(__AVX2__) && defined(__FMA__)

namespace {

// x holds exact integers in [0, 2^53); returns x mod p in [0, p).
inline __m256d reduce(__m256d x, __m256d vp, __m256d vpinv) {
  const __m256d q = _mm256_floor_pd(_mm256_mul_pd(x, vpinv));
  __m256d r = _mm256_fnmadd_pd(q, vp, x);
  // q may be off by one in either direction.
  const __m256d zero = _mm256_setzero_pd();
  r = _mm256_add_pd(r, _mm256_and_pd(_mm256_cmp_pd(r, zero, _CMP_LT_OQ), vp));
  r = _mm256_sub_pd(r, _mm256_and_pd(_mm256_cmp_pd(r, vp, _CMP_GE_OQ), vp));
  return r;
}

void axpy_avx2(std::uint32_t* dst, const std::uint32_t* src, std::size_t n, std::uint32_t s, std::uint32_t p) {
  std::size_t j = 0;
  if (p < kMaxVectorModulus) {
    const __m256d vp = _mm256_set1_pd(static_cast<double>(p));
    const __m256d vpinv = _mm256_set1_pd(1.0 / static_cast<double>(p));
    const __m256d vs = _mm256_set1_pd(static_cast<double>(s));
    for (; j + 8 <= n; j += 8) {
      const __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + j));
      const __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + j));
      const __m256d a_lo = _mm256_cvtepi32_pd(_mm256_castsi256_si128(a));
      const __m256d a_hi = _mm256_cvtepi32_pd(_mm256_extracti128_si256(a, 1));
      const __m256d d_lo = _mm256_cvtepi32_pd(_mm256_castsi256_si128(d));
      const __m256d d_hi = _mm256_cvtepi32_pd(_mm256_extracti128_si256(d, 1));
      const __m256d r_lo = reduce(_mm256_fmadd_pd(vs, a_lo, d_lo), vp, vpinv);
      const __m256d r_hi = reduce(_mm256_fmadd_pd(vs, a_hi, d_hi), vp, vpinv);
      const __m256i out = _mm256_set_m128i(_mm256_cvtpd_epi32(r_hi), _mm256_cvtpd_epi32(r_lo));
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + j), out);
    }
  }
  const std::uint64_t sm = s;
  for (; j < n; ++j) dst[j] = static_cast<std::uint32_t>((dst[j] + sm * src[j]) % p);
}

void scale_avx2(std::uint32_t* dst, std::size_t n, std::uint32_t s, std::uint32_t p) {
  std::size_t j = 0;
  if (p < kMaxVectorModulus) {
    const __m256d vp = _mm256_set1_pd(static_cast<double>(p));
    const __m256d vpinv = _mm256_set1_pd(1.0 / static_cast<double>(p));
    const __m256d vs = _mm256_set1_pd(static_cast<double>(s));
    for (; j + 4 <= n; j += 4) {
      const __m128i d = _mm_loadu_si128(reinterpret_cast<const __m128i*>(dst + j));
      const __m256d r = reduce(_mm256_mul_pd(vs, _mm256_cvtepi32_pd(d)), vp, vpinv);
      _mm_storeu_si128(reinterpret_cast<__m128i*>(dst + j), _mm256_cvtpd_epi32(r));
    }
  }
  const std::uint64_t sm = s;
  for (; j < n; ++j) dst[j] = static_cast<std::uint32_t>((sm * dst[j]) % p);
}

}  // namespace

const ModpKernels& avx2_kernels() {
  static const ModpKernels k{&axpy_avx2, &scale_avx2};
  return k;
}

#else

const ModpKernels& avx2_kernels() { return scalar_kernels(); }

#endif

}  // namespace dnash::simd::detail
