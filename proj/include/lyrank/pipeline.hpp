#pragma once

#include <span>
#include <string>
#include <vector>

#include "lyrank/balance.hpp"
#include "lyrank/config.hpp"
#include "lyrank/reduce.hpp"
#include "lyrank/svm.hpp"

namespace lyrank {

/// Labels as +1 (TOP) / -1 (BOTTOM).
std::vector<int> signed_labels(const std::vector<Label>& labels);

/// Standardizer and PCA fitted on one set of rows.
struct Reduction {
  Standardizer standardizer;
  PcaModel pca;

  std::vector<double> apply(std::span<const double> raw) const;
  Matrix apply(const Matrix& raw) const;
};

Reduction fit_reduction(const Matrix& raw, double variance_threshold);

/// Every fitted stage needed to score a raw feature vector.
struct FittedPipeline {
  Reduction reduction;
  SvmModel svm;
  std::size_t synthetic = 0;

  double decision(std::span<const double> raw) const;
  int predict(std::span<const double> raw) const;
};

/// Standardize, PCA, SMOTE, then SMO, all fitted on the given rows.
FittedPipeline fit_pipeline(const Matrix& raw, const std::vector<int>& labels,
                            const PipelineConfig& cfg, std::uint64_t seed);

/// Seeds for the SMOTE and SMO stages derived from one stage seed.
std::uint64_t smote_seed(std::uint64_t seed) noexcept;
std::uint64_t smo_seed(std::uint64_t seed) noexcept;

SmoParams smo_params(const PipelineConfig& cfg, std::uint64_t seed);

}  // namespace lyrank
