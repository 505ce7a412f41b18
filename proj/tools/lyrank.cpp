// lyrank: lyrics -> top/bottom chart rank classifier.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lyrank/commands.hpp"
#include "lyrank/error.hpp"
#include "lyrank/simd.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

struct PipelineFlags {
  std::optional<std::string> config_file;
  std::optional<std::uint64_t> seed;
  std::optional<int> folds;
  std::optional<double> variance_threshold;
  std::vector<std::string> kernels;
  std::optional<double> c;
  std::optional<std::string> gamma;
  std::optional<int> degree;
  std::optional<int> smote_k;
  std::optional<int> top_cut;
  std::optional<int> bottom_cut;
  bool paper_mode = false;

  void attach(CLI::App& app) {
    app.add_option("--config", config_file, "JSON pipeline config; flags override it")
        ->check(CLI::ExistingFile);
    app.add_option("--seed", seed, "PRNG seed (u64)");
    app.add_option("--folds", folds, "cross-validation folds [10]");
    app.add_option("--variance-threshold", variance_threshold,
                   "cumulative explained variance kept by PCA [0.6]");
    app.add_option("--kernel", kernels, "rbf|poly|linear (repeatable) [rbf]")
        ->check(CLI::IsMember({"rbf", "poly", "linear"}));
    app.add_option("--c", c, "SVM box constraint C [1.0]");
    app.add_option("--gamma", gamma, "kernel gamma, or 'auto' = 1/d [auto]");
    app.add_option("--degree", degree, "polynomial degree [3]");
    app.add_option("--smote-k", smote_k, "SMOTE nearest neighbours [5]");
    app.add_option("--top-cut", top_cut, "peak rank <= this is TOP [30]");
    app.add_option("--bottom-cut", bottom_cut, "peak rank >= this is BOTTOM [71]");
    app.add_flag("--paper-mode", paper_mode,
                 "fit standardization, PCA and SMOTE on the whole corpus before CV");
  }

  lyrank::PipelineConfig resolve() const {
    lyrank::PipelineConfig cfg;
    if (config_file) {
      std::ifstream in(*config_file);
      try {
        cfg = lyrank::config_from_json(nlohmann::json::parse(in));
      } catch (const nlohmann::json::exception& e) {
        throw lyrank::ValidationError(*config_file + ": " + e.what());
      }
    }
    if (seed) cfg.seed = *seed;
    if (folds) cfg.folds = *folds;
    if (variance_threshold) cfg.variance_threshold = *variance_threshold;
    if (!kernels.empty()) cfg.kernel = *lyrank::parse_kernel(kernels.front());
    if (c) cfg.C = *c;
    if (gamma) {
      if (*gamma == "auto") {
        cfg.gamma.reset();
      } else {
        try {
          std::size_t used = 0;
          cfg.gamma = std::stod(*gamma, &used);
          if (used != gamma->size()) throw std::invalid_argument("trailing");
        } catch (const std::logic_error&) {
          throw lyrank::ValidationError("--gamma expects a number or 'auto'");
        }
      }
    }
    if (degree) cfg.degree = *degree;
    if (smote_k) cfg.smote_k = *smote_k;
    if (top_cut) cfg.cuts.top_cut = *top_cut;
    if (bottom_cut) cfg.cuts.bottom_cut = *bottom_cut;
    if (paper_mode) cfg.paper_mode = true;
    cfg.validate();
    return cfg;
  }

  std::vector<lyrank::KernelKind> kernel_list(const lyrank::PipelineConfig& cfg) const {
    if (kernels.empty()) return {cfg.kernel};
    std::vector<lyrank::KernelKind> out;
    for (const auto& k : kernels) out.push_back(*lyrank::parse_kernel(k));
    return out;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lyrank: classify songs into top/bottom chart bands from their lyrics"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "lyrank 1.0");
  bool show_isa = false;
  app.add_flag("--show-simd", show_isa, "print the selected SIMD kernel variant to stderr");

  std::string corpus, bundle, out_path, matrix, model;

  auto* extract = app.add_subcommand("extract", "corpus + lexicon bundle -> feature matrix CSV");
  PipelineFlags extract_flags;
  extract->add_option("--corpus", corpus, "corpus file (JSON lines)")->required();
  extract->add_option("--bundle", bundle, "lexicon bundle directory")->required();
  extract->add_option("--out", out_path, "output CSV")->required();
  extract->add_option("--top-cut", extract_flags.top_cut, "peak rank <= this is TOP [30]");
  extract->add_option("--bottom-cut", extract_flags.bottom_cut, "peak rank >= this is BOTTOM [71]");

  auto* evaluate = app.add_subcommand("evaluate", "stratified k-fold CV report");
  PipelineFlags eval_flags;
  bool baseline = false;
  evaluate->add_option("--matrix", matrix, "feature matrix CSV")->required();
  evaluate->add_flag("--baseline", baseline, "also evaluate the Gaussian Naive Bayes baseline");
  eval_flags.attach(*evaluate);

  auto* train = app.add_subcommand("train", "fit the full pipeline and write a model file");
  PipelineFlags train_flags;
  train->add_option("--matrix", matrix, "feature matrix CSV")->required();
  train->add_option("--model", model, "output model file")->required();
  train_flags.attach(*train);

  auto* predict = app.add_subcommand("predict", "score a corpus with a trained model");
  predict->add_option("--model", model, "model file")->required();
  predict->add_option("--corpus", corpus, "corpus file (JSON lines)")->required();
  predict->add_option("--bundle", bundle, "lexicon bundle directory")->required();

  auto* grid = app.add_subcommand("gridsearch", "CV over C and gamma grids");
  PipelineFlags grid_flags;
  grid->add_option("--matrix", matrix, "feature matrix CSV")->required();
  grid_flags.attach(*grid);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  if (show_isa) {
    std::cerr << "simd: " << lyrank::simd::isa_name(lyrank::simd::active().isa) << "\n";
  }

  try {
    if (*extract) {
      const auto cfg = extract_flags.resolve();
      lyrank::cli::cmd_extract(corpus, bundle, out_path, cfg.cuts, std::cout);
    } else if (*evaluate) {
      const auto cfg = eval_flags.resolve();
      lyrank::cli::cmd_evaluate(matrix, cfg, eval_flags.kernel_list(cfg), baseline, std::cout);
    } else if (*train) {
      lyrank::cli::cmd_train(matrix, train_flags.resolve(), model, std::cout);
    } else if (*predict) {
      lyrank::cli::cmd_predict(model, corpus, bundle, std::cout);
    } else if (*grid) {
      lyrank::cli::cmd_gridsearch(matrix, grid_flags.resolve(), std::cout);
    }
  } catch (const lyrank::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const lyrank::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return 0;
}
