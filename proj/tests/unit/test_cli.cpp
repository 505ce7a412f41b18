#include <sys/wait.h>

#include <cstdlib>
#include <nlohmann/json.hpp>
#include <sstream>

#include "doctest.h"
#include "lyrank/commands.hpp"
#include "lyrank/config.hpp"
#include "lyrank/corpus.hpp"
#include "lyrank/error.hpp"
#include "lyrank/eval.hpp"
#include "lyrank/features.hpp"
#include "lyrank/lexicon.hpp"
#include "lyrank/model_io.hpp"
#include "lyrank/pipeline.hpp"
#include "test_util.hpp"

using namespace lyrank;
using lyrank::testing::TempDir;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(LYRANK_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// Label tally read straight from the JSON lines with the default cuts.
struct Tally {
  std::size_t top = 0, bottom = 0, excluded = 0;
};
Tally tally_demo_corpus() {
  Tally t;
  std::istringstream in(testing::read_file(testing::demo_corpus()));
  for (std::string line; std::getline(in, line);) {
    if (line.empty()) continue;
    const auto j = nlohmann::json::parse(line);
    int peak = 101;
    for (const int r : j.at("weekly_ranks")) peak = std::min(peak, r);
    (peak <= 30 ? t.top : peak >= 71 ? t.bottom : t.excluded)++;
  }
  return t;
}

PipelineConfig small_config() {
  PipelineConfig cfg;
  cfg.folds = 3;
  cfg.seed = 5;
  return cfg;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("extract writes the matrix, sidecar and tally") {
  TempDir tmp;
  std::ostringstream log;
  cli::cmd_extract(testing::demo_corpus(), testing::demo_bundle(), tmp.str("m.csv"), RankCuts{},
                   log);
  const Tally t = tally_demo_corpus();
  CHECK(log.str().find("TOP " + std::to_string(t.top) + "  BOTTOM " + std::to_string(t.bottom) +
                       "  EXCLUDED " + std::to_string(t.excluded)) != std::string::npos);

  const auto bundle = load_bundle(testing::demo_bundle());
  const auto m = load_feature_matrix(tmp.str("m.csv"));
  CHECK(m.rows() == t.top + t.bottom);
  CHECK(m.cols() == bundle.feature_count());
  CHECK(m.feature_names == bundle.feature_names());
  CHECK(m.schema_hash == bundle.schema_hash());

  const auto text = testing::read_file(tmp.str("m.csv"));
  CHECK(text.rfind("# schema " + bundle.schema_hash() + "\nsong_id,label,word_count,", 0) == 0);
  const auto sidecar = lines_of(testing::read_file(tmp.str("m.csv.coverage.csv")));
  CHECK(sidecar.size() == m.rows() + 1);
  CHECK(sidecar[0].rfind("song_id,", 0) == 0);
}

TEST_CASE("extract reports a missing bundle manifest") {
  TempDir tmp;
  std::ostringstream log;
  try {
    cli::cmd_extract(testing::demo_corpus(), tmp.str("nowhere"), tmp.str("m.csv"), RankCuts{}, log);
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("missing bundle manifest") != std::string::npos);
  }
  CHECK_THROWS_AS(cli::cmd_extract(testing::demo_corpus(), testing::demo_bundle(),
                                   tmp.str("m.csv"), RankCuts{50, 40}, log),
                  ValidationError);
}

TEST_CASE("train then predict reproduces the in-memory decision values") {
  TempDir tmp;
  std::ostringstream log;
  cli::cmd_extract(testing::demo_corpus(), testing::demo_bundle(), tmp.str("m.csv"), RankCuts{},
                   log);
  const auto cfg = small_config();
  cli::cmd_train(tmp.str("m.csv"), cfg, tmp.str("model.json"), log);

  const auto matrix = load_feature_matrix(tmp.str("m.csv"));
  const auto fitted = fit_pipeline(matrix.values, signed_labels(matrix.labels), cfg, cfg.seed);
  const auto bundle = load_bundle(testing::demo_bundle());
  const auto songs = load_corpus(testing::demo_corpus());

  std::ostringstream pred;
  cli::cmd_predict(tmp.str("model.json"), testing::demo_corpus(), testing::demo_bundle(), pred);
  const auto rows = lines_of(pred.str());
  REQUIRE(rows.size() == songs.size() + 1);
  CHECK(rows[0] == "song_id,predicted,decision_value");
  for (std::size_t i = 0; i < songs.size(); ++i) {
    const double expect = fitted.decision(extract(songs[i], bundle).values);
    const auto comma1 = rows[i + 1].find(',');
    const auto comma2 = rows[i + 1].find(',', comma1 + 1);
    CHECK(rows[i + 1].substr(0, comma1) == songs[i].id);
    CHECK(rows[i + 1].substr(comma1 + 1, comma2 - comma1 - 1) == (expect >= 0 ? "TOP" : "BOTTOM"));
    CHECK(std::strtod(rows[i + 1].c_str() + comma2 + 1, nullptr) == expect);
  }

  std::ifstream mf(tmp.str("model.json"));
  const auto model = load_model(mf);
  CHECK(model.config == cfg);
  CHECK(model.schema_hash == bundle.schema_hash());
  CHECK(model.pipeline.svm.dual_coefs == fitted.svm.dual_coefs);
}

TEST_CASE("predict refuses a bundle with a different schema") {
  TempDir tmp;
  std::ostringstream log;
  cli::cmd_extract(testing::demo_corpus(), testing::demo_bundle(), tmp.str("m.csv"), RankCuts{},
                   log);
  cli::cmd_train(tmp.str("m.csv"), small_config(), tmp.str("model.json"), log);
  tmp.write("other/manifest.txt", "joy.txt\n");
  tmp.write("other/joy.txt", "category joy EMOTION_BASIC\nhappy\njoy*\n");
  std::ostringstream pred;
  try {
    cli::cmd_predict(tmp.str("model.json"), testing::demo_corpus(), tmp.str("other"), pred);
    FAIL("expected a schema mismatch");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("schema hash mismatch") != std::string::npos);
  }
  CHECK(pred.str().empty());
}

TEST_CASE("evaluate prints one row per kernel and is reproducible") {
  TempDir tmp;
  std::ostringstream log;
  cli::cmd_extract(testing::demo_corpus(), testing::demo_bundle(), tmp.str("m.csv"), RankCuts{},
                   log);
  const std::vector<KernelKind> kernels{KernelKind::kRbf, KernelKind::kPoly, KernelKind::kLinear};
  std::ostringstream a, b;
  cli::cmd_evaluate(tmp.str("m.csv"), small_config(), kernels, true, a);
  cli::cmd_evaluate(tmp.str("m.csv"), small_config(), kernels, true, b);
  CHECK(a.str() == b.str());
  std::size_t table_rows = 0, metric_lines = 0;
  for (const auto& line : lines_of(a.str())) {
    table_rows += line.rfind("SVM ", 0) == 0 || line.rfind("Gaussian NB", 0) == 0;
    metric_lines += line.rfind("METRICS ", 0) == 0;
  }
  CHECK(table_rows == 4);
  CHECK(metric_lines == 4);
  auto other = small_config();
  other.seed = 6;
  std::ostringstream c;
  cli::cmd_evaluate(tmp.str("m.csv"), other, kernels, false, c);
  CHECK(c.str() != a.str());
}

TEST_CASE("config JSON round trip") {
  PipelineConfig cfg;
  cfg.cuts = RankCuts{20, 80};
  cfg.kernel = KernelKind::kPoly;
  cfg.gamma = 0.125;
  cfg.degree = 2;
  cfg.C = 3.5;
  cfg.seed = 18446744073709551615ULL;
  cfg.paper_mode = true;
  CHECK(config_from_json(nlohmann::json::parse(to_json(cfg).dump())) == cfg);
  PipelineConfig defaults;
  CHECK(config_from_json(nlohmann::json::parse(to_json(defaults).dump())) == defaults);
  CHECK(config_from_json(nlohmann::json::object()) == defaults);
  CHECK_THROWS_AS(config_from_json(nlohmann::json{{"folds", 1}}), ValidationError);
  CHECK_THROWS_AS(config_from_json(nlohmann::json{{"variance_threshold", 0.0}}), ValidationError);
}

TEST_CASE("binary exit codes") {
  TempDir tmp;
  CHECK(run_cli("--version") == 0);
  CHECK(run_cli("--help") == 0);
  CHECK(run_cli("") == 2);
  CHECK(run_cli("frobnicate") == 2);
  CHECK(run_cli("evaluate --matrix " + tmp.str("missing.csv")) == 2);

  const std::string corpus = testing::demo_corpus(), bundle = testing::demo_bundle();
  CHECK(run_cli("extract --corpus " + corpus + " --bundle " + tmp.str("none") + " --out " +
                tmp.str("m.csv")) == 2);
  REQUIRE(run_cli("extract --corpus " + corpus + " --bundle " + bundle + " --out " +
                  tmp.str("m.csv")) == 0);
  CHECK(run_cli("evaluate --matrix " + tmp.str("m.csv") + " --folds 1") == 2);
  CHECK(run_cli("evaluate --matrix " + tmp.str("m.csv") + " --gamma fast") == 2);
  CHECK(run_cli("evaluate --matrix " + tmp.str("m.csv") + " --kernel sigmoid") == 2);
  CHECK(run_cli("evaluate --matrix " + tmp.str("m.csv") + " --folds 3 --kernel linear") == 0);

  // Every feature constant: PCA has nothing to keep.
  std::string flat = "song_id,label,a,b\n";
  for (int i = 0; i < 20; ++i) {
    flat += "s" + std::to_string(i) + (i % 2 ? ",TOP" : ",BOTTOM") + ",1,2\n";
  }
  tmp.write("flat.csv", flat);
  CHECK(run_cli("evaluate --matrix " + tmp.str("flat.csv") + " --folds 2") == 3);
}

}  // TEST_SUITE
