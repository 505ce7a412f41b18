#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "lyrank/config.hpp"
#include "lyrank/features.hpp"
#include "lyrank/pipeline.hpp"

namespace lyrank {

/// TOP is the positive class.
struct ConfusionMatrix {
  std::size_t tp = 0, fp = 0, fn = 0, tn = 0;

  std::size_t total() const noexcept { return tp + fp + fn + tn; }
  void add(int truth, int predicted) noexcept;
  ConfusionMatrix& operator+=(const ConfusionMatrix& o) noexcept;
  bool operator==(const ConfusionMatrix&) const = default;
};

/// A metric value plus whether a zero denominator forced the fallback.
struct Metric {
  double value = 0.0;
  bool degenerate = false;
};

Metric precision(const ConfusionMatrix& cm);
Metric recall(const ConfusionMatrix& cm);
/// Throws ValidationError on an empty matrix.
Metric cohens_kappa(const ConfusionMatrix& cm);

/// Fold index per example. Each class is shuffled with the seed and dealt
/// round-robin, continuing the deal across classes.
std::vector<int> stratified_folds(const std::vector<int>& labels, int k, std::uint64_t seed);

struct GnbModel {
  std::vector<double> mean[2];  // [0] = +1, [1] = -1
  std::vector<double> var[2];
  double log_prior[2] = {0.0, 0.0};
};

GnbModel gnb_train(const Matrix& x, const std::vector<int>& y);
double gnb_log_odds(const GnbModel& model, std::span<const double> x);
/// +1 when the TOP log-posterior is at least the BOTTOM one.
int gnb_predict(const GnbModel& model, std::span<const double> x);

enum class Classifier { kSvm, kGaussianNb };

struct FoldResult {
  ConfusionMatrix cm;
  std::size_t pca_k = 0;
  std::size_t synthetic = 0;
  std::size_t support_vectors = 0;
  bool svm_converged = true;
};

struct CvReport {
  std::vector<FoldResult> per_fold;
  ConfusionMatrix pooled;
  Metric precision, recall, kappa;
  PipelineConfig config;
  Classifier classifier = Classifier::kSvm;

  /// Row label such as "svm-rbf" or "gnb".
  std::string name() const;
};

CvReport cross_validate(const FeatureMatrix& matrix, const PipelineConfig& cfg,
                        Classifier classifier = Classifier::kSvm);

/// Multi-line human-readable report.
void write_report(std::ostream& out, const CvReport& report);
/// Single "METRICS ..." line for regression diffing.
std::string metrics_line(const CvReport& report);

/// Reads the CSV written by write_feature_matrix.
FeatureMatrix read_feature_matrix(std::istream& in);
FeatureMatrix load_feature_matrix(const std::string& path);

}  // namespace lyrank
