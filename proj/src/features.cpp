#include "lyrank/features.hpp"

#include <cstdio>
#include <unordered_set>

#include "lyrank/error.hpp"

namespace lyrank {

double category_rate(std::span<const std::string> tokens, const CategoryLexicon& lexicon) {
  if (tokens.empty()) return 0.0;
  std::size_t hits = 0;
  for (const auto& t : tokens) {
    if (lexicon.matches(t)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(tokens.size()) * 100.0;
}

ScalarMean scalar_mean(std::span<const std::string> tokens, const ScalarLexicon& scalar) {
  double sum = 0.0;
  std::size_t covered = 0;
  for (const auto& t : tokens) {
    if (const auto v = scalar.lookup(t)) {
      sum += *v;
      ++covered;
    }
  }
  if (covered == 0) return {};
  return {sum / static_cast<double>(covered),
          static_cast<double>(covered) / static_cast<double>(tokens.size())};
}

double type_token_ratio(std::span<const std::string> tokens) {
  if (tokens.empty()) return 0.0;
  const std::unordered_set<std::string_view> types(tokens.begin(), tokens.end());
  return static_cast<double>(types.size()) / static_cast<double>(tokens.size());
}

double word_count(std::span<const std::string> tokens) {
  return static_cast<double>(tokens.size());
}

FeatureVector extract(const LabeledSong& song, const LexiconBundle& bundle) {
  return extract(song.song, bundle);
}

FeatureVector extract(const SongRecord& song, const LexiconBundle& bundle) {
  const std::span<const std::string> tokens(song.tokens);
  FeatureVector fv;
  fv.song_id = song.id;
  fv.schema_hash = bundle.schema_hash();
  fv.values.reserve(bundle.feature_count());
  fv.values.push_back(word_count(tokens));
  fv.values.push_back(type_token_ratio(tokens));
  for (const auto& cat : bundle.categories) fv.values.push_back(category_rate(tokens, cat));
  for (const auto& sc : bundle.scalars) fv.values.push_back(scalar_mean(tokens, sc).mean);
  return fv;
}

std::vector<double> scalar_coverage(const LabeledSong& song, const LexiconBundle& bundle) {
  std::vector<double> out;
  for (const auto& sc : bundle.scalars) out.push_back(scalar_mean(song.song.tokens, sc).coverage);
  return out;
}

FeatureMatrix assemble(const std::vector<LabeledSong>& songs, const LexiconBundle& bundle) {
  if (songs.empty()) throw ValidationError("cannot assemble a feature matrix from zero songs");
  FeatureMatrix m;
  m.feature_names = bundle.feature_names();
  m.schema_hash = bundle.schema_hash();
  m.values = Matrix(0, m.feature_names.size());
  for (const auto& song : songs) {
    const FeatureVector fv = extract(song, bundle);
    m.song_ids.push_back(fv.song_id);
    m.labels.push_back(song.label);
    m.values.append_row(fv.values);
  }
  return m;
}

namespace {

void put_double(std::ostream& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out << buf;
}

}  // namespace

void write_feature_matrix(std::ostream& out, const FeatureMatrix& matrix) {
  if (!matrix.schema_hash.empty()) out << "# schema " << matrix.schema_hash << '\n';
  out << "song_id,label";
  for (const auto& name : matrix.feature_names) out << ',' << name;
  out << '\n';
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    if (matrix.song_ids[r].find_first_of(",\n\r") != std::string::npos) {
      throw ValidationError("song id '" + matrix.song_ids[r] + "' cannot be written to CSV");
    }
    out << matrix.song_ids[r] << ',' << label_name(matrix.labels[r]);
    for (const double v : matrix.values.row(r)) {
      out << ',';
      put_double(out, v);
    }
    out << '\n';
  }
}

void write_coverage(std::ostream& out, const std::vector<LabeledSong>& songs,
                    const LexiconBundle& bundle) {
  out << "song_id";
  for (const auto& sc : bundle.scalars) out << ',' << sc.name() << "_coverage";
  out << '\n';
  for (const auto& song : songs) {
    out << song.song.id;
    for (const double c : scalar_coverage(song, bundle)) {
      out << ',';
      put_double(out, c);
    }
    out << '\n';
  }
}

}  // namespace lyrank
