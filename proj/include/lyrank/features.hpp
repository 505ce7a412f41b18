#pragma once

#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "lyrank/corpus.hpp"
#include "lyrank/lexicon.hpp"
#include "lyrank/matrix.hpp"

namespace lyrank {

struct FeatureVector {
  std::string song_id;
  std::vector<double> values;
  std::string schema_hash;
};

/// Songs x features, rows in input order, labels aligned with rows.
struct FeatureMatrix {
  std::vector<std::string> song_ids;
  std::vector<std::string> feature_names;
  std::vector<Label> labels;
  std::string schema_hash;
  Matrix values;

  std::size_t rows() const noexcept { return values.rows(); }
  std::size_t cols() const noexcept { return values.cols(); }
};

struct ScalarMean {
  double mean = 0.0;
  double coverage = 0.0;
};

/// Matches per 100 tokens; 0 for an empty song.
double category_rate(std::span<const std::string> tokens, const CategoryLexicon& lexicon);

/// Mean over covered tokens plus the covered fraction. (0, 0) when nothing
/// is covered.
ScalarMean scalar_mean(std::span<const std::string> tokens, const ScalarLexicon& scalar);

double type_token_ratio(std::span<const std::string> tokens);
double word_count(std::span<const std::string> tokens);

/// [word_count, type_token_ratio, category rates..., scalar means...]
FeatureVector extract(const SongRecord& song, const LexiconBundle& bundle);
FeatureVector extract(const LabeledSong& song, const LexiconBundle& bundle);

/// Per-scalar coverage of one song, in bundle order.
std::vector<double> scalar_coverage(const LabeledSong& song, const LexiconBundle& bundle);

/// Throws ValidationError on empty input.
FeatureMatrix assemble(const std::vector<LabeledSong>& songs, const LexiconBundle& bundle);

/// CSV export: an optional "# schema <hash>" line, then the header
/// song_id,label,<feature names...>, then one row per song. Values are
/// printed with 17 significant digits so that reading them back is exact.
void write_feature_matrix(std::ostream& out, const FeatureMatrix& matrix);

/// Coverage sidecar: song_id then one column per scalar lexicon.
void write_coverage(std::ostream& out, const std::vector<LabeledSong>& songs,
                    const LexiconBundle& bundle);

}  // namespace lyrank
