#include "lyrank/svm.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lyrank/error.hpp"
#include "lyrank/rng.hpp"
#include "lyrank/simd.hpp"

namespace lyrank {

std::string_view kernel_name(KernelKind kind) noexcept {
  switch (kind) {
    case KernelKind::kLinear: return "linear";
    case KernelKind::kPoly: return "poly";
    case KernelKind::kRbf: return "rbf";
  }
  return "unknown";
}

std::optional<KernelKind> parse_kernel(std::string_view text) noexcept {
  for (auto k : {KernelKind::kLinear, KernelKind::kPoly, KernelKind::kRbf}) {
    if (kernel_name(k) == text) return k;
  }
  return std::nullopt;
}

void KernelSpec::validate() const {
  if (kind == KernelKind::kLinear) return;
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ValidationError("kernel gamma must be > 0");
  if (kind == KernelKind::kPoly) {
    if (degree < 1) throw ValidationError("polynomial degree must be >= 1");
    if (!std::isfinite(coef0)) throw ValidationError("polynomial coef0 must be finite");
  }
}

namespace {

double apply_kernel(const KernelSpec& spec, const simd::KernelTable& k, const double* a,
                    const double* b, std::size_t n) {
  switch (spec.kind) {
    case KernelKind::kLinear:
      return k.dot(a, b, n);
    case KernelKind::kPoly: {
      const double base = spec.gamma * k.dot(a, b, n) + spec.coef0;
      double r = 1.0;
      for (int i = 0; i < spec.degree; ++i) r *= base;
      return r;
    }
    case KernelKind::kRbf:
      return std::exp(-spec.gamma * k.squared_distance(a, b, n));
  }
  return 0.0;
}

/// Kernel rows over the training set. Small problems keep the full Gram
/// matrix; larger ones recompute rows on demand into two scratch slots.
class KernelRows {
 public:
  static constexpr std::size_t kFullLimit = 8000;

  KernelRows(const Matrix& x, const KernelSpec& spec)
      : x_(x), spec_(spec), table_(simd::active()), n_(x.rows()), full_(n_ <= kFullLimit) {
    diag_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      diag_[i] = apply_kernel(spec_, table_, x_.row(i).data(), x_.row(i).data(), x_.cols());
    }
    if (full_) {
      gram_.resize(n_ * n_);
      for (std::size_t i = 0; i < n_; ++i) fill(i, gram_.data() + i * n_);
    } else {
      slots_[0].resize(n_);
      slots_[1].resize(n_);
    }
  }

  double diag(std::size_t i) const { return diag_[i]; }

  /// Row i; `slot` selects the scratch buffer when rows are not cached.
  const double* row(std::size_t i, int slot) {
    if (full_) return gram_.data() + i * n_;
    if (slot_row_[slot] != i) {
      fill(i, slots_[slot].data());
      slot_row_[slot] = i;
    }
    return slots_[slot].data();
  }

 private:
  void fill(std::size_t i, double* out) const {
    const std::size_t d = x_.cols();
    const double* xi = x_.row(i).data();
    const double* base = x_.data().data();
    switch (spec_.kind) {
      case KernelKind::kLinear:
        table_.dot_rows(base, n_, d, xi, out);
        break;
      case KernelKind::kPoly:
        table_.dot_rows(base, n_, d, xi, out);
        for (std::size_t j = 0; j < n_; ++j) {
          const double b = spec_.gamma * out[j] + spec_.coef0;
          double r = 1.0;
          for (int p = 0; p < spec_.degree; ++p) r *= b;
          out[j] = r;
        }
        break;
      case KernelKind::kRbf:
        table_.squared_distance_rows(base, n_, d, xi, out);
        for (std::size_t j = 0; j < n_; ++j) out[j] = std::exp(-spec_.gamma * out[j]);
        break;
    }
  }

  const Matrix& x_;
  KernelSpec spec_;
  const simd::KernelTable& table_;
  std::size_t n_;
  bool full_;
  std::vector<double> diag_;
  std::vector<double> gram_;
  std::vector<double> slots_[2];
  std::size_t slot_row_[2] = {SIZE_MAX, SIZE_MAX};
};

void check_training_input(const Matrix& x, const std::vector<int>& y) {
  if (x.rows() != y.size()) throw ValidationError("train_smo: label count mismatch");
  bool pos = false, neg = false;
  for (const int v : y) {
    if (v == 1) pos = true;
    else if (v == -1) neg = true;
    else throw ValidationError("train_smo: labels must be +1 or -1");
  }
  if (!pos || !neg) throw ValidationError("train_smo: both classes are required");
  for (const double v : x.data()) {
    if (!std::isfinite(v)) throw ValidationError("train_smo: non-finite feature value");
  }
}

}  // namespace

double kernel_eval(const KernelSpec& spec, std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ValidationError("kernel_eval: dimension mismatch");
  return apply_kernel(spec, simd::active(), x.data(), y.data(), x.size());
}

SmoResult train_smo_detailed(const Matrix& x, const std::vector<int>& y, const KernelSpec& spec,
                             const SmoParams& params) {
  spec.validate();
  if (!(params.C > 0.0)) throw ValidationError("train_smo: C must be > 0");
  check_training_input(x, y);

  const std::size_t n = x.rows();
  const double C = params.C;
  KernelRows rows(x, spec);
  SplitMix64 rng(params.seed);

  std::vector<double> alpha(n, 0.0);
  std::vector<double> f(n, 0.0);  // sum_j alpha_j y_j K(x_j, x_i), bias excluded
  double b = 0.0;

  auto snap = [C](double a) {
    if (a < 1e-12 * C) return 0.0;
    if (a > C * (1.0 - 1e-12)) return C;
    return a;
  };

  // Closed-form step on the pair (i, j); false when the pair cannot move.
  auto take_step = [&](std::size_t i, std::size_t j, double ei) {
    const double yi = y[i];
    const double yj = y[j];
    const double ej = f[j] + b - yj;
    const double ai_old = alpha[i];
    const double aj_old = alpha[j];

    double lo, hi;
    if (y[i] != y[j]) {
      lo = std::max(0.0, aj_old - ai_old);
      hi = std::min(C, C + aj_old - ai_old);
    } else {
      lo = std::max(0.0, ai_old + aj_old - C);
      hi = std::min(C, ai_old + aj_old);
    }
    if (lo == hi) return false;

    const double* ki = rows.row(i, 0);
    const double kij = ki[j];
    const double eta = 2.0 * kij - rows.diag(i) - rows.diag(j);
    if (eta >= 0.0) return false;

    double aj = aj_old - yj * (ei - ej) / eta;
    aj = snap(std::clamp(aj, lo, hi));
    if (std::abs(aj - aj_old) < 1e-5) return false;
    const double ai = snap(std::clamp(ai_old + yi * yj * (aj_old - aj), 0.0, C));

    const double di = ai - ai_old;
    const double dj = aj - aj_old;
    const double b1 = b - ei - yi * di * rows.diag(i) - yj * dj * kij;
    const double b2 = b - ej - yi * di * kij - yj * dj * rows.diag(j);
    if (ai > 0.0 && ai < C) b = b1;
    else if (aj > 0.0 && aj < C) b = b2;
    else b = 0.5 * (b1 + b2);

    alpha[i] = ai;
    alpha[j] = aj;
    const double* kj = rows.row(j, 1);
    ki = rows.row(i, 0);
    for (std::size_t t = 0; t < n; ++t) f[t] += yi * di * ki[t] + yj * dj * kj[t];
    return true;
  };

  long iters = 0;
  int passes = 0;
  while (passes < params.max_passes && iters < params.max_iters) {
    std::size_t changed = 0;
    for (std::size_t i = 0; i < n && iters < params.max_iters; ++i) {
      const double yi = y[i];
      const double ei = f[i] + b - yi;
      const bool violates = (yi * ei < -params.tol && alpha[i] < C) ||
                            (yi * ei > params.tol && alpha[i] > 0.0);
      if (!violates) continue;

      // Random partner first; if it cannot move, sweep the others cyclically
      // from there so a lone useful partner is never missed.
      const std::size_t start = rng.below(n - 1);
      for (std::size_t step = 0; step + 1 < n; ++step) {
        std::size_t j = (start + step) % (n - 1);
        if (j >= i) ++j;
        if (take_step(i, j, ei)) {
          ++changed;
          ++iters;
          break;
        }
      }
    }
    passes = changed == 0 ? passes + 1 : 0;
  }

  SmoResult result;
  SvmModel& model = result.model;
  model.kernel = spec;
  model.C = C;
  model.bias = b;
  model.support_vectors = Matrix(0, x.cols());
  for (std::size_t i = 0; i < n; ++i) {
    if (alpha[i] > 0.0) {
      model.support_vectors.append_row(x.row(i));
      model.dual_coefs.push_back(alpha[i] * y[i]);
    }
  }

  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double margin = y[i] * (f[i] + b) - 1.0;
    double v;
    if (alpha[i] <= 0.0) v = std::max(0.0, -margin);
    else if (alpha[i] >= C) v = std::max(0.0, margin);
    else v = std::abs(margin);
    worst = std::max(worst, v);
  }
  model.diagnostics = {iters, worst, passes >= params.max_passes};
  result.alphas = std::move(alpha);
  return result;
}

SvmModel train_smo(const Matrix& x, const std::vector<int>& y, const KernelSpec& spec,
                   const SmoParams& params) {
  return train_smo_detailed(x, y, spec, params).model;
}

double decision_value(const SvmModel& model, std::span<const double> x) {
  if (x.size() != model.input_dim()) {
    throw ValidationError("decision_value: expected dimension " +
                          std::to_string(model.input_dim()) + ", got " + std::to_string(x.size()));
  }
  const auto& table = simd::active();
  double f = 0.0;
  for (std::size_t s = 0; s < model.dual_coefs.size(); ++s) {
    f += model.dual_coefs[s] *
         apply_kernel(model.kernel, table, model.support_vectors.row(s).data(), x.data(), x.size());
  }
  return f + model.bias;
}

int predict(const SvmModel& model, std::span<const double> x) {
  return decision_value(model, x) >= 0.0 ? 1 : -1;
}

double dual_objective(const Matrix& x, const std::vector<int>& y, std::span<const double> alphas,
                      const KernelSpec& spec, double C) {
  const std::size_t n = x.rows();
  if (y.size() != n || alphas.size() != n) throw ValidationError("dual_objective: size mismatch");
  double balance = 0.0;
  double linear = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (alphas[i] < 0.0 || alphas[i] > C) {
      throw ValidationError("dual_objective: alpha outside [0, C]");
    }
    balance += alphas[i] * y[i];
    linear += alphas[i];
  }
  if (std::abs(balance) > 1e-8) {
    throw ValidationError("dual_objective: sum(alpha_i y_i) is not zero");
  }
  double quad = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (alphas[i] == 0.0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      quad += alphas[i] * alphas[j] * y[i] * y[j] * kernel_eval(spec, x.row(i), x.row(j));
    }
  }
  return linear - 0.5 * quad;
}

}  // namespace lyrank
