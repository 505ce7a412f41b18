#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "lyrank/config.hpp"
#include "lyrank/svm.hpp"

namespace lyrank::cli {

/// Corpus + bundle -> feature matrix CSV (plus a coverage sidecar at
/// <out>.coverage.csv). Prints counts and the label tally.
void cmd_extract(const std::string& corpus_path, const std::string& bundle_path,
                 const std::string& out_path, RankCuts cuts, std::ostream& out);

/// Cross-validates one SVM per requested kernel (and optionally the Gaussian
/// Naive Bayes baseline) and prints a results table, per-fold detail and
/// METRICS lines.
void cmd_evaluate(const std::string& matrix_path, const PipelineConfig& cfg,
                  const std::vector<KernelKind>& kernels, bool with_baseline, std::ostream& out);

/// Fits every stage on the full matrix and writes the model file.
void cmd_train(const std::string& matrix_path, const PipelineConfig& cfg,
               const std::string& model_path, std::ostream& out);

/// Scores every song of a corpus. Refuses when the bundle's schema hash
/// differs from the model's.
void cmd_predict(const std::string& model_path, const std::string& corpus_path,
                 const std::string& bundle_path, std::ostream& out);

/// CV over C in {0.1, 1, 10} and gamma in {0.01, 0.1, 1} x 1/d.
void cmd_gridsearch(const std::string& matrix_path, const PipelineConfig& cfg, std::ostream& out);

}  // namespace lyrank::cli
