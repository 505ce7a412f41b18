#include <sstream>

#include "doctest.h"
#include "lyrank/error.hpp"
#include "lyrank/eval.hpp"
#include "lyrank/features.hpp"
#include "synthetic.hpp"
#include "test_util.hpp"

using namespace lyrank;

namespace {

using Tokens = std::vector<std::string>;

LexiconBundle small_bundle() {
  return LexiconBundle{{CategoryLexicon("pronouns", LexiconFamily::kBiber, {"i", "you"}),
                        CategoryLexicon("posemo", LexiconFamily::kLiwc, {"lov*", "happ*"}),
                        CategoryLexicon("time", LexiconFamily::kWordnet, {"night", "day"})},
                       {ScalarLexicon("familiarity", {{"love", 5.0}, {"you", 3.0}})},
                       "t"};
}

LabeledSong labeled(const std::string& id, const std::string& lyrics, Label label = Label::kTop) {
  return LabeledSong{make_song(id, "t", "a", 2001, {label == Label::kTop ? 1 : 90}, lyrics),
                     label == Label::kTop ? 1 : 90, label};
}

}  // namespace

TEST_SUITE("features") {

TEST_CASE("category_rate") {
  const CategoryLexicon pronouns("pronouns", LexiconFamily::kBiber, {"i", "you"});
  CHECK(category_rate(Tokens{"i", "love", "you"}, pronouns) == doctest::Approx(200.0 / 3.0));
  CHECK(category_rate(Tokens{}, pronouns) == 0.0);
  CHECK(category_rate(Tokens(10, "la"), pronouns) == 0.0);
}

TEST_CASE("scalar_mean") {
  const ScalarLexicon fam("f", {{"love", 5.0}});
  const auto half = scalar_mean(Tokens{"love", "xyzzy"}, fam);
  CHECK(half.mean == 5.0);
  CHECK(half.coverage == 0.5);

  const ScalarLexicon two("f", {{"a", 2.0}, {"b", 2.0}});
  const auto full = scalar_mean(Tokens{"a", "b", "a"}, two);
  CHECK(full.mean == 2.0);
  CHECK(full.coverage == 1.0);

  const auto none = scalar_mean(Tokens{"x", "y"}, fam);
  CHECK(none.mean == 0.0);
  CHECK(none.coverage == 0.0);
}

TEST_CASE("type_token_ratio and word_count") {
  CHECK(type_token_ratio(Tokens{"la", "la", "la"}) == doctest::Approx(1.0 / 3.0));
  CHECK(type_token_ratio(Tokens{"a", "b", "c"}) == 1.0);
  CHECK(type_token_ratio(Tokens{}) == 0.0);
  CHECK(word_count(Tokens{"beat", "it"}) == 2.0);
  CHECK(word_count(Tokens{}) == 0.0);
  CHECK(word_count(Tokens(500, "x")) == 500.0);
}

TEST_CASE("extract layout") {
  const auto bundle = small_bundle();
  const auto fv = extract(labeled("s", "I love you, day and night!"), bundle);
  REQUIRE(fv.values.size() == 6);
  CHECK(fv.song_id == "s");
  CHECK(fv.schema_hash == bundle.schema_hash());
  // tokens: i love you day and night
  CHECK(fv.values[0] == 6.0);
  CHECK(fv.values[1] == 1.0);
  CHECK(fv.values[2] == doctest::Approx(200.0 / 6.0));
  CHECK(fv.values[3] == doctest::Approx(100.0 / 6.0));
  CHECK(fv.values[4] == doctest::Approx(200.0 / 6.0));
  CHECK(fv.values[5] == 4.0);
}

TEST_CASE("empty song yields the zero vector") {
  const auto fv = extract(labeled("e", "<br> !!! ..."), small_bundle());
  CHECK(fv.values == std::vector<double>(6, 0.0));
}

TEST_CASE("extract is invariant to token order") {
  const auto bundle = small_bundle();
  SplitMix64 rng(4);
  const Tokens vocab{"i", "you", "love", "lovely", "happy", "night", "day", "la", "oh"};
  for (int trial = 0; trial < 100; ++trial) {
    Tokens t(1 + rng.below(30));
    for (auto& w : t) w = vocab[rng.below(vocab.size())];
    std::string a, b;
    for (const auto& w : t) a += w + " ";
    for (std::size_t i = t.size() - 1; i > 0; --i) std::swap(t[i], t[rng.below(i + 1)]);
    for (const auto& w : t) b += w + " ";
    CHECK(extract(labeled("x", a), bundle).values == extract(labeled("x", b), bundle).values);
  }
}

TEST_CASE("duplicating every token") {
  const auto bundle = small_bundle();
  const auto once = extract(labeled("x", "i love you night"), bundle).values;
  const auto twice = extract(labeled("x", "i love you night i love you night"), bundle).values;
  CHECK(twice[0] == 2.0 * once[0]);
  CHECK(once[1] == 1.0);
  CHECK(twice[1] == 0.5);
  for (std::size_t j = 2; j < once.size(); ++j) CHECK(twice[j] == once[j]);
}

TEST_CASE("assemble rows equal per-song extraction") {
  const auto bundle = small_bundle();
  const std::vector<LabeledSong> songs{labeled("a", "i love you"),
                                       labeled("b", "night night day", Label::kBottom)};
  const auto m = assemble(songs, bundle);
  REQUIRE(m.rows() == 2);
  CHECK(m.cols() == 6);
  CHECK(m.labels == std::vector<Label>{Label::kTop, Label::kBottom});
  CHECK(m.song_ids == std::vector<std::string>{"a", "b"});
  CHECK(m.feature_names == bundle.feature_names());
  for (std::size_t r = 0; r < 2; ++r) {
    const auto row = m.values.row(r);
    CHECK(std::vector<double>(row.begin(), row.end()) == extract(songs[r], bundle).values);
  }
  CHECK_THROWS_AS(assemble({}, bundle), ValidationError);
}

TEST_CASE("corpus-scale matrix on the demonstration bundle") {
  const auto bundle = load_bundle(lyrank::testing::demo_bundle());
  synth::PlantedSpec spec;
  spec.songs = 1622;
  spec.top_fraction = 991.0 / 1622.0;
  LabelTally tally;
  const auto songs = label_corpus(synth::planted_corpus(bundle, spec), RankCuts{}, &tally);
  CHECK(tally.top == 991);
  CHECK(tally.bottom == 631);
  const auto m = assemble(songs, bundle);
  CHECK(m.rows() == 1622);
  CHECK(m.cols() == 48);
  for (const double v : m.values.data()) CHECK(std::isfinite(v));
}

TEST_CASE("CSV export reads back bit for bit") {
  const auto bundle = load_bundle(lyrank::testing::demo_bundle());
  synth::PlantedSpec spec;
  spec.songs = 60;
  const auto m = assemble(label_corpus(synth::planted_corpus(bundle, spec), RankCuts{}), bundle);
  std::stringstream buf;
  write_feature_matrix(buf, m);
  const auto back = read_feature_matrix(buf);
  CHECK(back.values == m.values);
  CHECK(back.labels == m.labels);
  CHECK(back.song_ids == m.song_ids);
  CHECK(back.feature_names == m.feature_names);
  CHECK(back.schema_hash == m.schema_hash);
}

TEST_CASE("coverage sidecar") {
  std::ostringstream out;
  write_coverage(out, {labeled("a", "love xyzzy")}, small_bundle());
  CHECK(out.str() == "song_id,familiarity_coverage\na,0.5\n");
}

}  // TEST_SUITE
