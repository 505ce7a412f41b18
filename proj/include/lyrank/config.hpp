#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "lyrank/corpus.hpp"
#include "lyrank/svm.hpp"

namespace lyrank {

/// Every knob of the extract -> standardize -> PCA -> SMOTE -> SVM pipeline.
struct PipelineConfig {
  RankCuts cuts;
  double variance_threshold = 0.6;
  int smote_k = 5;
  KernelKind kernel = KernelKind::kRbf;
  std::optional<double> gamma;  // unset: gamma_scale / (dimension fed to the SVM)
  double gamma_scale = 1.0;
  int degree = 3;
  double coef0 = 1.0;
  double C = 1.0;
  int folds = 10;
  std::uint64_t seed = 0;
  bool paper_mode = false;
  double smo_tol = 1e-3;
  int smo_max_passes = 10;
  long smo_max_iters = 100000;

  void validate() const;
  /// Kernel parameters for an SVM whose inputs have `dim` coordinates.
  KernelSpec kernel_spec(std::size_t dim) const;

  bool operator==(const PipelineConfig&) const = default;
};

nlohmann::ordered_json to_json(const PipelineConfig& cfg);
PipelineConfig config_from_json(const nlohmann::json& j);

}  // namespace lyrank
