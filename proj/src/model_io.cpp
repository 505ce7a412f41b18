#include "lyrank/model_io.hpp"

#include <nlohmann/json.hpp>

#include "lyrank/error.hpp"

namespace lyrank {

namespace {

using json = nlohmann::ordered_json;

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto row = m.row(r);
    rows.push_back(std::vector<double>(row.begin(), row.end()));
  }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", rows}};
}

Matrix matrix_from(const json& j) {
  const auto rows = j.at("rows").get<std::size_t>();
  const auto cols = j.at("cols").get<std::size_t>();
  Matrix m(0, cols);
  for (const auto& r : j.at("data")) m.append_row(r.get<std::vector<double>>());
  if (m.rows() != rows) throw ValidationError("model file: matrix row count mismatch");
  return m;
}

json kernel_json(const KernelSpec& k) {
  json j{{"kind", std::string(kernel_name(k.kind))}};
  if (k.kind != KernelKind::kLinear) j["gamma"] = k.gamma;
  if (k.kind == KernelKind::kPoly) {
    j["degree"] = k.degree;
    j["coef0"] = k.coef0;
  }
  return j;
}

KernelSpec kernel_from(const json& j) {
  const auto kind = parse_kernel(j.at("kind").get<std::string>());
  if (!kind) throw ValidationError("model file: unknown kernel");
  KernelSpec k = KernelSpec::linear();
  if (*kind == KernelKind::kRbf) k = KernelSpec::rbf(j.at("gamma").get<double>());
  if (*kind == KernelKind::kPoly) {
    k = KernelSpec::poly(j.at("gamma").get<double>(), j.at("degree").get<int>(),
                         j.at("coef0").get<double>());
  }
  k.validate();
  return k;
}

}  // namespace

void save_model(std::ostream& out, const ModelBundleFile& model) {
  const auto& p = model.pipeline;
  json j;
  j["format_version"] = model.format_version;
  j["schema_hash"] = model.schema_hash;
  j["feature_names"] = model.feature_names;
  j["config"] = to_json(model.config);
  j["standardizer"] = {{"means", p.reduction.standardizer.means},
                       {"stddevs", p.reduction.standardizer.stddevs}};
  j["pca"] = {{"variance_threshold", p.reduction.pca.variance_threshold},
              {"k", p.reduction.pca.k},
              {"eigenvalues", p.reduction.pca.eigenvalues},
              {"components", matrix_json(p.reduction.pca.components)}};
  j["svm"] = {{"kernel", kernel_json(p.svm.kernel)},
              {"c", p.svm.C},
              {"bias", p.svm.bias},
              {"dual_coefs", p.svm.dual_coefs},
              {"support_vectors", matrix_json(p.svm.support_vectors)},
              {"iterations", p.svm.diagnostics.iterations},
              {"kkt_violation", p.svm.diagnostics.kkt_violation},
              {"converged", p.svm.diagnostics.converged}};
  j["synthetic_rows"] = p.synthetic;
  out << j.dump(1) << '\n';
}

ModelBundleFile load_model(std::istream& in) {
  ModelBundleFile m;
  try {
    const json j = json::parse(in);
    m.format_version = j.at("format_version").get<std::string>();
    if (m.format_version != kModelFormatVersion) {
      throw ValidationError("unsupported model format '" + m.format_version + "'");
    }
    m.schema_hash = j.at("schema_hash").get<std::string>();
    m.feature_names = j.at("feature_names").get<std::vector<std::string>>();
    m.config = config_from_json(j.at("config"));

    auto& p = m.pipeline;
    const auto& st = j.at("standardizer");
    p.reduction.standardizer.means = st.at("means").get<std::vector<double>>();
    p.reduction.standardizer.stddevs = st.at("stddevs").get<std::vector<double>>();

    const auto& pca = j.at("pca");
    p.reduction.pca.variance_threshold = pca.at("variance_threshold").get<double>();
    p.reduction.pca.k = pca.at("k").get<std::size_t>();
    p.reduction.pca.eigenvalues = pca.at("eigenvalues").get<std::vector<double>>();
    p.reduction.pca.components = matrix_from(pca.at("components"));

    const auto& svm = j.at("svm");
    p.svm.kernel = kernel_from(svm.at("kernel"));
    p.svm.C = svm.at("c").get<double>();
    p.svm.bias = svm.at("bias").get<double>();
    p.svm.dual_coefs = svm.at("dual_coefs").get<std::vector<double>>();
    p.svm.support_vectors = matrix_from(svm.at("support_vectors"));
    p.svm.diagnostics.iterations = svm.at("iterations").get<long>();
    p.svm.diagnostics.kkt_violation = svm.at("kkt_violation").get<double>();
    p.svm.diagnostics.converged = svm.at("converged").get<bool>();
    p.synthetic = j.at("synthetic_rows").get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed model file: ") + e.what());
  }

  const auto& p = m.pipeline;
  const std::size_t d = m.feature_names.size();
  if (p.reduction.standardizer.means.size() != d || p.reduction.standardizer.stddevs.size() != d ||
      p.reduction.pca.components.cols() != d || p.reduction.pca.components.rows() != p.reduction.pca.k ||
      p.svm.support_vectors.cols() != p.reduction.pca.k ||
      p.svm.support_vectors.rows() != p.svm.dual_coefs.size()) {
    throw ValidationError("model file: inconsistent stage dimensions");
  }
  return m;
}

}  // namespace lyrank
