#include "lyrank/simd.hpp"

namespace lyrank::simd::detail {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double l0 = 0.0, l1 = 0.0, l2 = 0.0, l3 = 0.0;
  const std::size_t blocked = n & ~std::size_t{3};
  std::size_t i = 0;
  for (; i < blocked; i += 4) {
    l0 += a[i] * b[i];
    l1 += a[i + 1] * b[i + 1];
    l2 += a[i + 2] * b[i + 2];
    l3 += a[i + 3] * b[i + 3];
  }
  double sum = (l0 + l2) + (l1 + l3);
  for (; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

double squared_distance_scalar(const double* a, const double* b, std::size_t n) {
  double l0 = 0.0, l1 = 0.0, l2 = 0.0, l3 = 0.0;
  const std::size_t blocked = n & ~std::size_t{3};
  std::size_t i = 0;
  for (; i < blocked; i += 4) {
    const double d0 = a[i] - b[i];
    const double d1 = a[i + 1] - b[i + 1];
    const double d2 = a[i + 2] - b[i + 2];
    const double d3 = a[i + 3] - b[i + 3];
    l0 += d0 * d0;
    l1 += d1 * d1;
    l2 += d2 * d2;
    l3 += d3 * d3;
  }
  double sum = (l0 + l2) + (l1 + l3);
  for (; i < n; ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return sum;
}

void dot_rows_scalar(const double* rows, std::size_t count, std::size_t n, const double* x,
                     double* out) {
  for (std::size_t r = 0; r < count; ++r) out[r] = dot_scalar(rows + r * n, x, n);
}

void squared_distance_rows_scalar(const double* rows, std::size_t count, std::size_t n,
                                  const double* x, double* out) {
  for (std::size_t r = 0; r < count; ++r) out[r] = squared_distance_scalar(rows + r * n, x, n);
}

}  // namespace

const KernelTable kScalarTable{Isa::kScalar, dot_scalar, squared_distance_scalar,
                               dot_rows_scalar, squared_distance_rows_scalar};

}  // namespace lyrank::simd::detail
