#include "lyrank/config.hpp"

#include <cmath>

#include "lyrank/error.hpp"

namespace lyrank {

void PipelineConfig::validate() const {
  if (!(1 <= cuts.top_cut && cuts.top_cut < cuts.bottom_cut && cuts.bottom_cut <= 100)) {
    throw ValidationError("rank cuts must satisfy 1 <= top-cut < bottom-cut <= 100");
  }
  if (!(variance_threshold > 0.0 && variance_threshold <= 1.0)) {
    throw ValidationError("variance threshold must be in (0, 1]");
  }
  if (smote_k < 1) throw ValidationError("smote-k must be >= 1");
  if (gamma && !(*gamma > 0.0 && std::isfinite(*gamma))) {
    throw ValidationError("gamma must be > 0");
  }
  if (!(gamma_scale > 0.0 && std::isfinite(gamma_scale))) {
    throw ValidationError("gamma scale must be > 0");
  }
  if (degree < 1) throw ValidationError("degree must be >= 1");
  if (!(C > 0.0 && std::isfinite(C))) throw ValidationError("C must be > 0");
  if (folds < 2) throw ValidationError("folds must be >= 2");
  if (!(smo_tol > 0.0)) throw ValidationError("SMO tolerance must be > 0");
  if (smo_max_passes < 1 || smo_max_iters < 1) throw ValidationError("SMO limits must be >= 1");
}

KernelSpec PipelineConfig::kernel_spec(std::size_t dim) const {
  const double g =
      gamma ? *gamma : gamma_scale / static_cast<double>(std::max<std::size_t>(dim, 1));
  switch (kernel) {
    case KernelKind::kLinear: return KernelSpec::linear();
    case KernelKind::kPoly: return KernelSpec::poly(g, degree, coef0);
    case KernelKind::kRbf: return KernelSpec::rbf(g);
  }
  return KernelSpec::rbf(g);
}

nlohmann::ordered_json to_json(const PipelineConfig& cfg) {
  nlohmann::ordered_json j;
  j["top_cut"] = cfg.cuts.top_cut;
  j["bottom_cut"] = cfg.cuts.bottom_cut;
  j["variance_threshold"] = cfg.variance_threshold;
  j["smote_k"] = cfg.smote_k;
  j["kernel"] = std::string(kernel_name(cfg.kernel));
  if (cfg.gamma) {
    j["gamma"] = *cfg.gamma;
  } else {
    j["gamma"] = "auto";
  }
  j["gamma_scale"] = cfg.gamma_scale;
  j["degree"] = cfg.degree;
  j["coef0"] = cfg.coef0;
  j["c"] = cfg.C;
  j["folds"] = cfg.folds;
  j["seed"] = cfg.seed;
  j["paper_mode"] = cfg.paper_mode;
  j["smo_tol"] = cfg.smo_tol;
  j["smo_max_passes"] = cfg.smo_max_passes;
  j["smo_max_iters"] = cfg.smo_max_iters;
  return j;
}

PipelineConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ValidationError("config must be a JSON object");
  PipelineConfig cfg;
  try {
    cfg.cuts.top_cut = j.value("top_cut", cfg.cuts.top_cut);
    cfg.cuts.bottom_cut = j.value("bottom_cut", cfg.cuts.bottom_cut);
    cfg.variance_threshold = j.value("variance_threshold", cfg.variance_threshold);
    cfg.smote_k = j.value("smote_k", cfg.smote_k);
    if (j.contains("kernel")) {
      const auto k = parse_kernel(j.at("kernel").get<std::string>());
      if (!k) throw ValidationError("unknown kernel in config");
      cfg.kernel = *k;
    }
    if (j.contains("gamma")) {
      const auto& g = j.at("gamma");
      if (g.is_string()) {
        if (g.get<std::string>() != "auto") throw ValidationError("gamma must be a number or \"auto\"");
        cfg.gamma.reset();
      } else {
        cfg.gamma = g.get<double>();
      }
    }
    cfg.gamma_scale = j.value("gamma_scale", cfg.gamma_scale);
    cfg.degree = j.value("degree", cfg.degree);
    cfg.coef0 = j.value("coef0", cfg.coef0);
    cfg.C = j.value("c", cfg.C);
    cfg.folds = j.value("folds", cfg.folds);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.paper_mode = j.value("paper_mode", cfg.paper_mode);
    cfg.smo_tol = j.value("smo_tol", cfg.smo_tol);
    cfg.smo_max_passes = j.value("smo_max_passes", cfg.smo_max_passes);
    cfg.smo_max_iters = j.value("smo_max_iters", cfg.smo_max_iters);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("bad config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

}  // namespace lyrank
