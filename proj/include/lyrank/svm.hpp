#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "lyrank/matrix.hpp"

namespace lyrank {

enum class KernelKind { kLinear, kPoly, kRbf };

std::string_view kernel_name(KernelKind kind) noexcept;
std::optional<KernelKind> parse_kernel(std::string_view text) noexcept;

/// LINEAR: x.y   POLY: (gamma x.y + coef0)^degree   RBF: exp(-gamma |x-y|^2)
struct KernelSpec {
  KernelKind kind = KernelKind::kRbf;
  double gamma = 1.0;
  int degree = 3;
  double coef0 = 1.0;

  static KernelSpec linear() { return {KernelKind::kLinear, 0.0, 0, 0.0}; }
  static KernelSpec poly(double gamma, int degree = 3, double coef0 = 1.0) {
    return {KernelKind::kPoly, gamma, degree, coef0};
  }
  static KernelSpec rbf(double gamma) { return {KernelKind::kRbf, gamma, 0, 0.0}; }

  /// Throws ValidationError if a required parameter is out of range.
  void validate() const;
  bool operator==(const KernelSpec&) const = default;
};

double kernel_eval(const KernelSpec& spec, std::span<const double> x, std::span<const double> y);

struct SmoParams {
  double C = 1.0;
  double tol = 1e-3;
  int max_passes = 10;
  long max_iters = 100000;
  std::uint64_t seed = 0;
};

struct TrainingDiagnostics {
  long iterations = 0;
  double kkt_violation = 0.0;
  bool converged = false;
};

struct SvmModel {
  KernelSpec kernel;
  Matrix support_vectors;
  std::vector<double> dual_coefs;  // alpha_i * y_i
  double bias = 0.0;
  double C = 1.0;
  TrainingDiagnostics diagnostics;

  std::size_t input_dim() const noexcept { return support_vectors.cols(); }
};

struct SmoResult {
  SvmModel model;
  std::vector<double> alphas;  // one per training row
};

/// Simplified SMO: sweep the examples, and for each one violating its KKT
/// condition by more than tol pair it with a seeded-random partner and solve
/// the two-variable subproblem in closed form. Stops after max_passes
/// consecutive sweeps without an update or after max_iters updates; in the
/// latter case diagnostics.converged is false.
SmoResult train_smo_detailed(const Matrix& x, const std::vector<int>& y, const KernelSpec& spec,
                             const SmoParams& params = {});
SvmModel train_smo(const Matrix& x, const std::vector<int>& y, const KernelSpec& spec,
                   const SmoParams& params = {});

double decision_value(const SvmModel& model, std::span<const double> x);
/// sign(f), with f == 0 mapped to +1.
int predict(const SvmModel& model, std::span<const double> x);

/// sum(alpha) - 1/2 sum_ij alpha_i alpha_j y_i y_j K(x_i, x_j). Throws if
/// alphas leave [0, C] or sum(alpha_i y_i) differs from 0 by more than 1e-8.
double dual_objective(const Matrix& x, const std::vector<int>& y, std::span<const double> alphas,
                      const KernelSpec& spec, double C);

}  // namespace lyrank
