#include "lyrank/eval.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "lyrank/error.hpp"
#include "lyrank/rng.hpp"

namespace lyrank {

void ConfusionMatrix::add(int truth, int predicted) noexcept {
  if (truth > 0) {
    ++(predicted > 0 ? tp : fn);
  } else {
    ++(predicted > 0 ? fp : tn);
  }
}

ConfusionMatrix& ConfusionMatrix::operator+=(const ConfusionMatrix& o) noexcept {
  tp += o.tp;
  fp += o.fp;
  fn += o.fn;
  tn += o.tn;
  return *this;
}

Metric precision(const ConfusionMatrix& cm) {
  const std::size_t denom = cm.tp + cm.fp;
  if (denom == 0) return {0.0, true};
  return {static_cast<double>(cm.tp) / static_cast<double>(denom), false};
}

Metric recall(const ConfusionMatrix& cm) {
  const std::size_t denom = cm.tp + cm.fn;
  if (denom == 0) return {0.0, true};
  return {static_cast<double>(cm.tp) / static_cast<double>(denom), false};
}

Metric cohens_kappa(const ConfusionMatrix& cm) {
  const std::size_t total = cm.total();
  if (total == 0) throw ValidationError("cohens_kappa: empty confusion matrix");
  const auto n = static_cast<double>(total);
  const double po = static_cast<double>(cm.tp + cm.tn) / n;
  const double pe = (static_cast<double>(cm.tp + cm.fp) * static_cast<double>(cm.tp + cm.fn) +
                     static_cast<double>(cm.fn + cm.tn) * static_cast<double>(cm.fp + cm.tn)) /
                    (n * n);
  if (pe == 1.0) return po == 1.0 ? Metric{1.0, false} : Metric{0.0, true};
  return {(po - pe) / (1.0 - pe), false};
}

std::vector<int> stratified_folds(const std::vector<int>& labels, int k, std::uint64_t seed) {
  if (k < 2) throw ValidationError("stratified_folds: k must be >= 2");
  std::vector<int> fold(labels.size(), -1);
  SplitMix64 rng(seed);
  std::size_t deal = 0;
  for (const int cls : {1, -1}) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == cls) members.push_back(i);
    }
    if (members.size() < static_cast<std::size_t>(k)) {
      throw ValidationError("stratified_folds: class " + std::string(cls > 0 ? "TOP" : "BOTTOM") +
                            " has " + std::to_string(members.size()) + " members, fewer than k=" +
                            std::to_string(k));
    }
    for (std::size_t i = members.size() - 1; i > 0; --i) {
      std::swap(members[i], members[rng.below(i + 1)]);
    }
    for (const std::size_t m : members) fold[m] = static_cast<int>(deal++ % static_cast<std::size_t>(k));
  }
  for (const int f : fold) {
    if (f < 0) throw ValidationError("stratified_folds: labels must be +1 or -1");
  }
  return fold;
}

GnbModel gnb_train(const Matrix& x, const std::vector<int>& y) {
  if (x.rows() != y.size()) throw ValidationError("gnb_train: label count mismatch");
  const std::size_t d = x.cols();
  GnbModel m;
  std::size_t count[2] = {0, 0};
  for (int c = 0; c < 2; ++c) {
    m.mean[c].assign(d, 0.0);
    m.var[c].assign(d, 0.0);
  }
  for (std::size_t r = 0; r < x.rows(); ++r) {
    const int c = y[r] > 0 ? 0 : 1;
    ++count[c];
    for (std::size_t j = 0; j < d; ++j) m.mean[c][j] += x(r, j);
  }
  if (count[0] == 0 || count[1] == 0) throw ValidationError("gnb_train: both classes are required");
  for (int c = 0; c < 2; ++c) {
    for (auto& v : m.mean[c]) v /= static_cast<double>(count[c]);
  }
  for (std::size_t r = 0; r < x.rows(); ++r) {
    const int c = y[r] > 0 ? 0 : 1;
    for (std::size_t j = 0; j < d; ++j) {
      const double dv = x(r, j) - m.mean[c][j];
      m.var[c][j] += dv * dv;
    }
  }
  const auto n = static_cast<double>(x.rows());
  for (int c = 0; c < 2; ++c) {
    for (auto& v : m.var[c]) v = std::max(v / static_cast<double>(count[c]), 1e-9);
    m.log_prior[c] = std::log(static_cast<double>(count[c]) / n);
  }
  return m;
}

double gnb_log_odds(const GnbModel& model, std::span<const double> x) {
  if (x.size() != model.mean[0].size()) throw ValidationError("gnb_predict: dimension mismatch");
  double lp[2];
  for (int c = 0; c < 2; ++c) {
    double s = model.log_prior[c];
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double d = x[j] - model.mean[c][j];
      s -= 0.5 * (std::log(2.0 * M_PI * model.var[c][j]) + d * d / model.var[c][j]);
    }
    lp[c] = s;
  }
  return lp[0] - lp[1];
}

int gnb_predict(const GnbModel& model, std::span<const double> x) {
  return gnb_log_odds(model, x) >= 0.0 ? 1 : -1;
}

std::string CvReport::name() const {
  if (classifier == Classifier::kGaussianNb) return "gnb";
  return "svm-" + std::string(kernel_name(config.kernel));
}

namespace {

template <class Error>
[[noreturn]] void rethrow_with_fold(const Error& e, int fold) {
  throw Error("fold " + std::to_string(fold) + ": " + e.what());
}

/// Trains the configured classifier on already-reduced, already-balanced rows
/// and scores the test rows.
FoldResult train_and_score(const Matrix& train, const std::vector<int>& ytrain, const Matrix& test,
                           const std::vector<int>& ytest, const PipelineConfig& cfg,
                           Classifier classifier, std::uint64_t seed) {
  FoldResult r;
  if (classifier == Classifier::kGaussianNb) {
    const GnbModel g = gnb_train(train, ytrain);
    for (std::size_t i = 0; i < test.rows(); ++i) r.cm.add(ytest[i], gnb_predict(g, test.row(i)));
    return r;
  }
  const SvmModel svm =
      train_smo(train, ytrain, cfg.kernel_spec(train.cols()), smo_params(cfg, seed));
  r.support_vectors = svm.dual_coefs.size();
  r.svm_converged = svm.diagnostics.converged;
  for (std::size_t i = 0; i < test.rows(); ++i) r.cm.add(ytest[i], predict(svm, test.row(i)));
  return r;
}

void split(const std::vector<int>& folds, int f, std::vector<std::size_t>& train,
           std::vector<std::size_t>& test) {
  train.clear();
  test.clear();
  for (std::size_t i = 0; i < folds.size(); ++i) (folds[i] == f ? test : train).push_back(i);
}

std::vector<int> pick(const std::vector<int>& v, const std::vector<std::size_t>& idx) {
  std::vector<int> out;
  out.reserve(idx.size());
  for (const auto i : idx) out.push_back(v[i]);
  return out;
}

}  // namespace

CvReport cross_validate(const FeatureMatrix& matrix, const PipelineConfig& cfg,
                        Classifier classifier) {
  cfg.validate();
  if (matrix.rows() != matrix.labels.size()) {
    throw ValidationError("cross_validate: label count mismatch");
  }
  CvReport report;
  report.config = cfg;
  report.classifier = classifier;

  const std::vector<int> y = signed_labels(matrix.labels);
  std::vector<std::size_t> train_idx, test_idx;

  if (!cfg.paper_mode) {
    const auto folds = stratified_folds(y, cfg.folds, derive_seed(cfg.seed, 0));
    for (int f = 0; f < cfg.folds; ++f) {
      const std::uint64_t fold_seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(f) + 1);
      try {
        split(folds, f, train_idx, test_idx);
        const Matrix train_raw = matrix.values.select_rows(train_idx);
        const std::vector<int> ytrain = pick(y, train_idx);
        const Reduction red = fit_reduction(train_raw, cfg.variance_threshold);
        const BalancedSet bal = balance_classes(red.apply(train_raw), ytrain,
                                                SmoteConfig{cfg.smote_k, smote_seed(fold_seed)});
        FoldResult r = train_and_score(bal.rows, bal.labels,
                                       red.apply(matrix.values.select_rows(test_idx)),
                                       pick(y, test_idx), cfg, classifier, fold_seed);
        r.pca_k = red.pca.k;
        r.synthetic = bal.synthetic;
        report.per_fold.push_back(r);
      } catch (const ValidationError& e) {
        rethrow_with_fold(e, f);
      } catch (const NumericalError& e) {
        rethrow_with_fold(e, f);
      }
    }
  } else {
    // Whole-corpus standardization, PCA and SMOTE, then CV on the result.
    const Reduction red = fit_reduction(matrix.values, cfg.variance_threshold);
    const BalancedSet bal = balance_classes(red.apply(matrix.values), y,
                                            SmoteConfig{cfg.smote_k, smote_seed(cfg.seed)});
    const auto folds = stratified_folds(bal.labels, cfg.folds, derive_seed(cfg.seed, 0));
    for (int f = 0; f < cfg.folds; ++f) {
      const std::uint64_t fold_seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(f) + 1);
      try {
        split(folds, f, train_idx, test_idx);
        FoldResult r = train_and_score(bal.rows.select_rows(train_idx), pick(bal.labels, train_idx),
                                       bal.rows.select_rows(test_idx), pick(bal.labels, test_idx),
                                       cfg, classifier, fold_seed);
        r.pca_k = red.pca.k;
        r.synthetic = bal.synthetic;
        report.per_fold.push_back(r);
      } catch (const ValidationError& e) {
        rethrow_with_fold(e, f);
      } catch (const NumericalError& e) {
        rethrow_with_fold(e, f);
      }
    }
  }

  for (const auto& r : report.per_fold) report.pooled += r.cm;
  report.precision = precision(report.pooled);
  report.recall = recall(report.pooled);
  report.kappa = cohens_kappa(report.pooled);
  return report;
}

namespace {

std::string fixed6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string flagged(const Metric& m) { return fixed6(m.value) + (m.degenerate ? "*" : ""); }

}  // namespace

void write_report(std::ostream& out, const CvReport& report) {
  char buf[160];
  out << "== " << report.name() << " (" << report.per_fold.size() << "-fold, "
      << (report.config.paper_mode ? "paper mode" : "fold-internal fitting") << ") ==\n";
  out << "fold     tp     fp     fn     tn  pca_k  synth    sv  precision     recall      kappa\n";
  for (std::size_t f = 0; f < report.per_fold.size(); ++f) {
    const auto& r = report.per_fold[f];
    std::snprintf(buf, sizeof buf, "%4zu %6zu %6zu %6zu %6zu %6zu %6zu %5zu", f, r.cm.tp, r.cm.fp,
                  r.cm.fn, r.cm.tn, r.pca_k, r.synthetic, r.support_vectors);
    out << buf;
    std::snprintf(buf, sizeof buf, " %10s %10s %10s%s\n", flagged(precision(r.cm)).c_str(),
                  flagged(recall(r.cm)).c_str(), flagged(cohens_kappa(r.cm)).c_str(),
                  r.svm_converged ? "" : "  (SMO hit max_iters)");
    out << buf;
  }
  const auto& p = report.pooled;
  std::snprintf(buf, sizeof buf, "pool %6zu %6zu %6zu %6zu", p.tp, p.fp, p.fn, p.tn);
  out << buf << "\n";
  out << "precision " << flagged(report.precision) << "  recall " << flagged(report.recall)
      << "  kappa " << flagged(report.kappa) << "\n";
}

std::string metrics_line(const CvReport& report) {
  std::string line = "METRICS " + report.name() + " precision=" + fixed6(report.precision.value) +
                     " recall=" + fixed6(report.recall.value) +
                     " kappa=" + fixed6(report.kappa.value);
  auto per_fold = [&](const char* key, Metric (*fn)(const ConfusionMatrix&)) {
    line += std::string(" ") + key + "=";
    for (std::size_t f = 0; f < report.per_fold.size(); ++f) {
      if (f) line += ";";
      line += fixed6(fn(report.per_fold[f].cm).value);
    }
  };
  per_fold("fold_precision", precision);
  per_fold("fold_recall", recall);
  per_fold("fold_kappa", cohens_kappa);
  return line;
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

FeatureMatrix read_feature_matrix(std::istream& in) {
  FeatureMatrix m;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  auto fail = [&](const std::string& msg) {
    throw ValidationError("feature matrix line " + std::to_string(line_no) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      std::istringstream hs(line.substr(1));
      std::string key, value;
      if (hs >> key >> value && key == "schema") m.schema_hash = value;
      continue;
    }
    auto cells = split_csv(line);
    if (!have_header) {
      if (cells.size() < 2 || cells[0] != "song_id" || cells[1] != "label") {
        fail("header must start with song_id,label");
      }
      m.feature_names.assign(cells.begin() + 2, cells.end());
      m.values = Matrix(0, m.feature_names.size());
      have_header = true;
      continue;
    }
    if (cells.size() != m.feature_names.size() + 2) {
      fail("expected " + std::to_string(m.feature_names.size() + 2) + " cells, got " +
           std::to_string(cells.size()));
    }
    std::vector<double> row(m.feature_names.size());
    for (std::size_t c = 0; c < row.size(); ++c) {
      const auto& cell = cells[c + 2];
      const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), row[c]);
      if (ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(row[c])) {
        fail("bad number '" + cell + "'");
      }
    }
    try {
      m.labels.push_back(parse_label(cells[1]));
    } catch (const ValidationError& e) {
      fail(e.what());
    }
    m.song_ids.push_back(cells[0]);
    m.values.append_row(row);
  }
  if (!have_header) throw ValidationError("feature matrix has no header");
  return m;
}

FeatureMatrix load_feature_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open feature matrix '" + path + "'");
  try {
    return read_feature_matrix(in);
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

}  // namespace lyrank
