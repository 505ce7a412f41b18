#include "lyrank/simd.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#define LYRANK_AVX2 __attribute__((target("avx2")))

namespace lyrank::simd::detail {
namespace {

// (l0 + l2) + (l1 + l3)
LYRANK_AVX2 inline double combine_lanes(__m256d acc) {
  const __m128d lo = _mm256_castpd256_pd128(acc);
  const __m128d hi = _mm256_extractf128_pd(acc, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(pair) + _mm_cvtsd_f64(_mm_unpackhi_pd(pair, pair));
}

LYRANK_AVX2 double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  const std::size_t blocked = n & ~std::size_t{3};
  std::size_t i = 0;
  for (; i < blocked; i += 4) {
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  }
  double sum = combine_lanes(acc);
  for (; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

LYRANK_AVX2 double squared_distance_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  const std::size_t blocked = n & ~std::size_t{3};
  std::size_t i = 0;
  for (; i < blocked; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
  }
  double sum = combine_lanes(acc);
  for (; i < n; ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return sum;
}

LYRANK_AVX2 void dot_rows_avx2(const double* rows, std::size_t count, std::size_t n,
                               const double* x, double* out) {
  for (std::size_t r = 0; r < count; ++r) out[r] = dot_avx2(rows + r * n, x, n);
}

LYRANK_AVX2 void squared_distance_rows_avx2(const double* rows, std::size_t count,
                                            std::size_t n, const double* x, double* out) {
  for (std::size_t r = 0; r < count; ++r) out[r] = squared_distance_avx2(rows + r * n, x, n);
}

}  // namespace

const KernelTable kAvx2Table{Isa::kAvx2, dot_avx2, squared_distance_avx2, dot_rows_avx2,
                             squared_distance_rows_avx2};

}  // namespace lyrank::simd::detail

#endif
