#include "lyrank/pipeline.hpp"

#include "lyrank/rng.hpp"

namespace lyrank {

std::vector<int> signed_labels(const std::vector<Label>& labels) {
  std::vector<int> out;
  out.reserve(labels.size());
  for (const Label l : labels) out.push_back(sign_of(l));
  return out;
}

std::vector<double> Reduction::apply(std::span<const double> raw) const {
  return pca.project(standardizer.apply(raw));
}

Matrix Reduction::apply(const Matrix& raw) const { return pca.project(standardizer.apply(raw)); }

Reduction fit_reduction(const Matrix& raw, double variance_threshold) {
  Reduction r;
  r.standardizer = fit_standardizer(raw);
  r.pca = fit_pca(r.standardizer.apply(raw), variance_threshold);
  return r;
}

std::uint64_t smote_seed(std::uint64_t seed) noexcept { return derive_seed(seed, 1); }
std::uint64_t smo_seed(std::uint64_t seed) noexcept { return derive_seed(seed, 2); }

SmoParams smo_params(const PipelineConfig& cfg, std::uint64_t seed) {
  SmoParams p;
  p.C = cfg.C;
  p.tol = cfg.smo_tol;
  p.max_passes = cfg.smo_max_passes;
  p.max_iters = cfg.smo_max_iters;
  p.seed = smo_seed(seed);
  return p;
}

double FittedPipeline::decision(std::span<const double> raw) const {
  return decision_value(svm, reduction.apply(raw));
}

int FittedPipeline::predict(std::span<const double> raw) const {
  return decision(raw) >= 0.0 ? 1 : -1;
}

FittedPipeline fit_pipeline(const Matrix& raw, const std::vector<int>& labels,
                            const PipelineConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  FittedPipeline fp;
  fp.reduction = fit_reduction(raw, cfg.variance_threshold);
  const Matrix reduced = fp.reduction.apply(raw);
  const BalancedSet balanced =
      balance_classes(reduced, labels, SmoteConfig{cfg.smote_k, smote_seed(seed)});
  fp.synthetic = balanced.synthetic;
  fp.svm = train_smo(balanced.rows, balanced.labels, cfg.kernel_spec(reduced.cols()),
                     smo_params(cfg, seed));
  return fp;
}

}  // namespace lyrank
