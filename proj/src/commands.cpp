#include "lyrank/commands.hpp"

#include <cstdio>
#include <fstream>

#include "lyrank/corpus.hpp"
#include "lyrank/error.hpp"
#include "lyrank/eval.hpp"
#include "lyrank/features.hpp"
#include "lyrank/lexicon.hpp"
#include "lyrank/model_io.hpp"

namespace lyrank::cli {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw ValidationError("cannot write '" + path + "'");
  return f;
}

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

void echo_config(std::ostream& out, const PipelineConfig& cfg) {
  out << "# config " << to_json(cfg).dump() << "\n";
}

void echo_matrix(std::ostream& out, const FeatureMatrix& m) {
  std::size_t top = 0;
  for (const Label l : m.labels) top += l == Label::kTop;
  out << "# matrix rows=" << m.rows() << " features=" << m.cols() << " TOP=" << top
      << " BOTTOM=" << m.rows() - top << " schema=" << (m.schema_hash.empty() ? "-" : m.schema_hash)
      << "\n";
}

std::string table_row(const std::string& name, const CvReport& r) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "%-16s %9.4f %9.4f %9.4f", name.c_str(), r.precision.value,
                r.recall.value, r.kappa.value);
  return buf;
}

std::string display_name(const CvReport& r) {
  if (r.classifier == Classifier::kGaussianNb) return "Gaussian NB";
  return "SVM " + std::string(kernel_name(r.config.kernel)) + " ker";
}

}  // namespace

void cmd_extract(const std::string& corpus_path, const std::string& bundle_path,
                 const std::string& out_path, RankCuts cuts, std::ostream& out) {
  const LexiconBundle bundle = load_bundle(bundle_path);
  const auto songs = load_corpus(corpus_path);
  LabelTally tally;
  const auto labeled = label_corpus(songs, cuts, &tally);
  if (labeled.empty()) throw ValidationError("no songs fall in the TOP or BOTTOM band");
  const FeatureMatrix matrix = assemble(labeled, bundle);

  {
    auto f = open_out(out_path);
    write_feature_matrix(f, matrix);
  }
  {
    auto f = open_out(out_path + ".coverage.csv");
    write_coverage(f, labeled, bundle);
  }

  out << "# cuts top<=" << cuts.top_cut << " bottom>=" << cuts.bottom_cut << "\n";
  out << "songs " << songs.size() << "  TOP " << tally.top << "  BOTTOM " << tally.bottom
      << "  EXCLUDED " << tally.excluded << "\n";
  out << "wrote " << matrix.rows() << " rows x " << matrix.cols() << " features to " << out_path
      << " (schema " << matrix.schema_hash << ")\n";
}

void cmd_evaluate(const std::string& matrix_path, const PipelineConfig& cfg,
                  const std::vector<KernelKind>& kernels, bool with_baseline, std::ostream& out) {
  cfg.validate();
  const FeatureMatrix matrix = load_feature_matrix(matrix_path);
  echo_config(out, cfg);
  echo_matrix(out, matrix);

  std::vector<CvReport> reports;
  for (const KernelKind k : kernels) {
    PipelineConfig c = cfg;
    c.kernel = k;
    reports.push_back(cross_validate(matrix, c, Classifier::kSvm));
  }
  if (with_baseline) reports.push_back(cross_validate(matrix, cfg, Classifier::kGaussianNb));

  out << "\nMeasures         Precision    Recall     Kappa\n";
  for (const auto& r : reports) out << table_row(display_name(r), r) << "\n";
  for (const auto& r : reports) {
    out << "\n";
    write_report(out, r);
  }
  out << "\n";
  for (const auto& r : reports) out << metrics_line(r) << "\n";
}

void cmd_train(const std::string& matrix_path, const PipelineConfig& cfg,
               const std::string& model_path, std::ostream& out) {
  cfg.validate();
  const FeatureMatrix matrix = load_feature_matrix(matrix_path);
  if (matrix.schema_hash.empty()) {
    throw ValidationError(matrix_path + ": no '# schema' line; regenerate it with extract");
  }
  echo_config(out, cfg);
  echo_matrix(out, matrix);

  ModelBundleFile model;
  model.schema_hash = matrix.schema_hash;
  model.feature_names = matrix.feature_names;
  model.config = cfg;
  model.pipeline = fit_pipeline(matrix.values, signed_labels(matrix.labels), cfg, cfg.seed);
  {
    auto f = open_out(model_path);
    save_model(f, model);
  }

  const auto& p = model.pipeline;
  out << "pca components " << p.reduction.pca.k << " of " << matrix.cols() << "\n";
  out << "smote synthetic rows " << p.synthetic << "\n";
  out << "support vectors " << p.svm.dual_coefs.size() << "  iterations "
      << p.svm.diagnostics.iterations << "  kkt_violation "
      << fmt("%.3g", p.svm.diagnostics.kkt_violation)
      << (p.svm.diagnostics.converged ? "" : "  (SMO hit max_iters)") << "\n";
  out << "wrote " << model_path << "\n";
}

void cmd_predict(const std::string& model_path, const std::string& corpus_path,
                 const std::string& bundle_path, std::ostream& out) {
  std::ifstream mf(model_path);
  if (!mf) throw ValidationError("cannot open model file '" + model_path + "'");
  const ModelBundleFile model = load_model(mf);
  const LexiconBundle bundle = load_bundle(bundle_path);
  const std::string hash = bundle.schema_hash();
  if (hash != model.schema_hash) {
    throw ValidationError("schema hash mismatch: model " + model.schema_hash + ", bundle " + hash);
  }
  const auto songs = load_corpus(corpus_path);

  out << "song_id,predicted,decision_value\n";
  for (const auto& song : songs) {
    const FeatureVector fv = extract(song, bundle);
    const double f = model.pipeline.decision(fv.values);
    out << song.id << ',' << (f >= 0.0 ? "TOP" : "BOTTOM") << ',' << fmt("%.17g", f) << "\n";
  }
}

void cmd_gridsearch(const std::string& matrix_path, const PipelineConfig& cfg, std::ostream& out) {
  cfg.validate();
  const FeatureMatrix matrix = load_feature_matrix(matrix_path);
  echo_config(out, cfg);
  echo_matrix(out, matrix);

  const double cs[] = {0.1, 1.0, 10.0};
  std::vector<double> scales{1.0};
  if (cfg.kernel != KernelKind::kLinear) scales = {0.01, 0.1, 1.0};

  out << "kernel         C  gamma*d  precision    recall     kappa\n";
  double best_kappa = -2.0;
  std::string best;
  for (const double c : cs) {
    for (const double s : scales) {
      PipelineConfig trial = cfg;
      trial.C = c;
      trial.gamma.reset();
      trial.gamma_scale = s;
      const CvReport r = cross_validate(matrix, trial, Classifier::kSvm);
      char buf[160];
      std::snprintf(buf, sizeof buf, "%-8s %6g %8g %10.4f %9.4f %9.4f",
                    std::string(kernel_name(cfg.kernel)).c_str(), c, s, r.precision.value,
                    r.recall.value, r.kappa.value);
      out << buf << "\n";
      if (r.kappa.value > best_kappa) {
        best_kappa = r.kappa.value;
        std::snprintf(buf, sizeof buf, "best C=%g gamma_scale=%g kappa=%.4f", c, s, r.kappa.value);
        best = buf;
      }
    }
  }
  out << best << "\n";
}

}  // namespace lyrank::cli
