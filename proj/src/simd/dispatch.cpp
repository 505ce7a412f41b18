#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "lyrank/error.hpp"
#include "lyrank/simd.hpp"

namespace lyrank::simd {

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::kScalar: return "scalar";
    case Isa::kAvx2: return "avx2";
    case Isa::kNeon: return "neon";
  }
  return "unknown";
}

bool available(Isa isa) noexcept {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
#if defined(__x86_64__) || defined(_M_X64)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::kNeon:
#if defined(__aarch64__)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa detect() noexcept {
  if (available(Isa::kAvx2)) return Isa::kAvx2;
  if (available(Isa::kNeon)) return Isa::kNeon;
  return Isa::kScalar;
}

const KernelTable& table(Isa isa) {
  if (!available(isa)) {
    throw ValidationError("SIMD variant '" + std::string(isa_name(isa)) +
                          "' is not available on this CPU/build");
  }
  switch (isa) {
#if defined(__x86_64__) || defined(_M_X64)
    case Isa::kAvx2: return detail::kAvx2Table;
#endif
#if defined(__aarch64__)
    case Isa::kNeon: return detail::kNeonTable;
#endif
    default: return detail::kScalarTable;
  }
}

namespace {

const KernelTable* initial_table() noexcept {
  Isa isa = detect();
  if (const char* env = std::getenv("LYRANK_SIMD")) {
    const std::string_view want(env);
    for (Isa candidate : {Isa::kScalar, Isa::kAvx2, Isa::kNeon}) {
      if (want == isa_name(candidate) && available(candidate)) isa = candidate;
    }
  }
  try {
    return &table(isa);
  } catch (...) {
    return &detail::kScalarTable;
  }
}

std::atomic<const KernelTable*>& active_slot() noexcept {
  static std::atomic<const KernelTable*> slot{initial_table()};
  return slot;
}

}  // namespace

const KernelTable& active() noexcept { return *active_slot().load(std::memory_order_acquire); }

void set_active(Isa isa) { active_slot().store(&table(isa), std::memory_order_release); }

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ValidationError("dot: dimension mismatch");
  return active().dot(a.data(), b.data(), a.size());
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ValidationError("squared_distance: dimension mismatch");
  return active().squared_distance(a.data(), b.data(), a.size());
}

}  // namespace lyrank::simd
