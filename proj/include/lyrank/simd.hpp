#pragma once

// Dense inner-loop kernels with a scalar reference implementation and
// vectorized variants picked at runtime.
//
// All variants share one reduction order so they agree bit for bit: element
// i accumulates into lane (i mod 4) over the largest multiple of 4, the
// lanes are combined as (l0 + l2) + (l1 + l3), then the tail is added in
// index order. The library is compiled without FP contraction.

#include <cstddef>
#include <span>
#include <string_view>

namespace lyrank::simd {

enum class Isa { kScalar, kAvx2, kNeon };

std::string_view isa_name(Isa isa) noexcept;

struct KernelTable {
  Isa isa;
  double (*dot)(const double* a, const double* b, std::size_t n);
  double (*squared_distance)(const double* a, const double* b, std::size_t n);
  /// out[r] = dot(rows[r*n .. r*n+n), x) for r in [0, count)
  void (*dot_rows)(const double* rows, std::size_t count, std::size_t n, const double* x,
                   double* out);
  /// out[r] = squared_distance(rows[r], x)
  void (*squared_distance_rows)(const double* rows, std::size_t count, std::size_t n,
                                const double* x, double* out);
};

/// Best ISA the running CPU supports and this build contains.
Isa detect() noexcept;

/// Whether a table for `isa` is compiled in and usable on this CPU.
bool available(Isa isa) noexcept;

const KernelTable& table(Isa isa);

/// The table used by the free functions below. Chosen on first use from
/// detect(), unless LYRANK_SIMD=scalar|avx2|neon is set in the environment.
const KernelTable& active() noexcept;

/// Overrides the active table (tests, benchmarks). Throws if unavailable.
void set_active(Isa isa);

double dot(std::span<const double> a, std::span<const double> b);
double squared_distance(std::span<const double> a, std::span<const double> b);

namespace detail {
extern const KernelTable kScalarTable;
#if defined(__x86_64__) || defined(_M_X64)
extern const KernelTable kAvx2Table;
#endif
#if defined(__aarch64__)
extern const KernelTable kNeonTable;
#endif
}  // namespace detail

}  // namespace lyrank::simd
