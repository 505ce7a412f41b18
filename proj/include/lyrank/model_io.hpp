#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "lyrank/config.hpp"
#include "lyrank/pipeline.hpp"

namespace lyrank {

inline constexpr const char* kModelFormatVersion = "lyrank-model/1";

/// Everything `predict` needs: the fitted stages, the feature schema they
/// were fitted against, and the configuration that produced them.
struct ModelBundleFile {
  std::string format_version = kModelFormatVersion;
  std::string schema_hash;
  std::vector<std::string> feature_names;
  PipelineConfig config;
  FittedPipeline pipeline;
};

/// JSON text. Doubles are written in shortest round-trip form, so a saved
/// model scores bit-identically after loading.
void save_model(std::ostream& out, const ModelBundleFile& model);
ModelBundleFile load_model(std::istream& in);

}  // namespace lyrank
