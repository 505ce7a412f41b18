#include "lyrank/simd.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

namespace lyrank::simd::detail {
namespace {

// Two float64x2 accumulators hold lanes (l0, l1) and (l2, l3).
inline double combine_lanes(float64x2_t lo, float64x2_t hi) {
  const float64x2_t pair = vaddq_f64(lo, hi);
  return vgetq_lane_f64(pair, 0) + vgetq_lane_f64(pair, 1);
}

double dot_neon(const double* a, const double* b, std::size_t n) {
  float64x2_t lo = vdupq_n_f64(0.0);
  float64x2_t hi = vdupq_n_f64(0.0);
  const std::size_t blocked = n & ~std::size_t{3};
  std::size_t i = 0;
  for (; i < blocked; i += 4) {
    lo = vaddq_f64(lo, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
    hi = vaddq_f64(hi, vmulq_f64(vld1q_f64(a + i + 2), vld1q_f64(b + i + 2)));
  }
  double sum = combine_lanes(lo, hi);
  for (; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

double squared_distance_neon(const double* a, const double* b, std::size_t n) {
  float64x2_t lo = vdupq_n_f64(0.0);
  float64x2_t hi = vdupq_n_f64(0.0);
  const std::size_t blocked = n & ~std::size_t{3};
  std::size_t i = 0;
  for (; i < blocked; i += 4) {
    const float64x2_t d0 = vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i));
    const float64x2_t d1 = vsubq_f64(vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
    lo = vaddq_f64(lo, vmulq_f64(d0, d0));
    hi = vaddq_f64(hi, vmulq_f64(d1, d1));
  }
  double sum = combine_lanes(lo, hi);
  for (; i < n; ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return sum;
}

void dot_rows_neon(const double* rows, std::size_t count, std::size_t n, const double* x,
                   double* out) {
  for (std::size_t r = 0; r < count; ++r) out[r] = dot_neon(rows + r * n, x, n);
}

void squared_distance_rows_neon(const double* rows, std::size_t count, std::size_t n,
                                const double* x, double* out) {
  for (std::size_t r = 0; r < count; ++r) out[r] = squared_distance_neon(rows + r * n, x, n);
}

}  // namespace

const KernelTable kNeonTable{Isa::kNeon, dot_neon, squared_distance_neon, dot_rows_neon,
                             squared_distance_rows_neon};

}  // namespace lyrank::simd::detail

#endif
