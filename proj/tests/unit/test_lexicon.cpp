#include "doctest.h"
#include "lyrank/error.hpp"
#include "lyrank/lexicon.hpp"
#include "test_util.hpp"

using namespace lyrank;
using lyrank::testing::TempDir;

namespace {

std::string load_error(const TempDir& dir) {
  try {
    load_bundle(dir.path());
  } catch (const ValidationError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_SUITE("lexicon") {

TEST_CASE("matches") {
  const CategoryLexicon happy("happy", LexiconFamily::kLiwc, {"happ*"});
  CHECK(happy.matches("happiness"));
  CHECK(happy.matches("happ"));
  CHECK_FALSE(happy.matches("hap"));

  const CategoryLexicon you("you", LexiconFamily::kBiber, {"you"});
  CHECK_FALSE(you.matches("your"));
  CHECK(you.matches("you"));
}

TEST_CASE("adding entries never removes a match") {
  const std::vector<std::string> tokens{"love", "lovely", "lo", "glove", "hate", "hat", "x"};
  std::vector<std::string> patterns;
  std::vector<bool> before(tokens.size(), false);
  for (const std::string p : {"hat", "lov*", "x", "g*", "hate"}) {
    patterns.push_back(p);
    const CategoryLexicon lex("c", LexiconFamily::kLiwc, patterns);
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      const bool now = lex.matches(tokens[i]);
      CHECK((!before[i] || now));
      before[i] = now;
    }
  }
}

TEST_CASE("lookup") {
  const ScalarLexicon s("freq", {{"love", 5.2}});
  CHECK(s.lookup("love") == 5.2);
  CHECK_FALSE(s.lookup("xyzzy"));
  const ScalarLexicon empty("none", {});
  CHECK_FALSE(empty.lookup("love"));
}

TEST_CASE("validate_pattern") {
  CHECK_FALSE(validate_pattern("happ*"));
  CHECK_FALSE(validate_pattern("you"));
  CHECK(validate_pattern("hap*py"));
  CHECK(validate_pattern("Happy"));
  CHECK(validate_pattern("two words"));
  CHECK(validate_pattern(""));
  CHECK(validate_pattern("*"));
  CHECK(validate_pattern("a**"));
}

TEST_CASE("load_bundle keeps manifest order") {
  TempDir dir;
  dir.write("manifest.txt", "# demo\nversion t1\nb.txt\na.txt\nf.txt\n");
  dir.write("b.txt", "category pronouns BIBER\ni\nyou\n");
  dir.write("a.txt", "# state verbs\ncategory state_verbs LCM\nlove\nknow*\n");
  dir.write("f.txt", "scalar familiarity\nlove 600\nyou 650.5\n");
  const auto bundle = load_bundle(dir.path());
  REQUIRE(bundle.categories.size() == 2);
  CHECK(bundle.categories[0].name() == "pronouns");
  CHECK(bundle.categories[1].name() == "state_verbs");
  CHECK(bundle.categories[1].family() == LexiconFamily::kLcm);
  REQUIRE(bundle.scalars.size() == 1);
  CHECK(bundle.scalars[0].lookup("you") == 650.5);
  CHECK(bundle.version == "t1");
  CHECK(bundle.feature_names() ==
        std::vector<std::string>{"word_count", "type_token_ratio", "pronouns", "state_verbs",
                                 "familiarity"});

  const auto again = load_bundle(dir.path());
  CHECK(again.schema_hash() == bundle.schema_hash());
  CHECK(again.feature_names() == bundle.feature_names());
}

TEST_CASE("load_bundle errors") {
  SUBCASE("missing manifest") {
    TempDir dir;
    CHECK(load_error(dir).find("manifest") != std::string::npos);
  }
  SUBCASE("duplicate lexicon name") {
    TempDir dir;
    dir.write("manifest.txt", "a.txt\nb.txt\n");
    dir.write("a.txt", "category pronouns BIBER\ni\n");
    dir.write("b.txt", "category pronouns LIWC\nyou\n");
    CHECK(load_error(dir).find("duplicate lexicon name 'pronouns'") != std::string::npos);
  }
  SUBCASE("interior wildcard names file and line") {
    TempDir dir;
    dir.write("manifest.txt", "a.txt\n");
    dir.write("a.txt", "category happy EMOTION_BASIC\njoy\nhap*py\n");
    const auto err = load_error(dir);
    CHECK(err.find("a.txt:3") != std::string::npos);
    CHECK(err.find("hap*py") != std::string::npos);
  }
  SUBCASE("uppercase pattern") {
    TempDir dir;
    dir.write("manifest.txt", "a.txt\n");
    dir.write("a.txt", "category happy EMOTION_BASIC\nJoy\n");
    CHECK(load_error(dir).find("a.txt:2") != std::string::npos);
  }
  SUBCASE("unknown family") {
    TempDir dir;
    dir.write("manifest.txt", "a.txt\n");
    dir.write("a.txt", "category happy FEELINGS\njoy\n");
    CHECK(load_error(dir).find("unknown family") != std::string::npos);
  }
  SUBCASE("bad scalar value") {
    TempDir dir;
    dir.write("manifest.txt", "s.txt\n");
    dir.write("s.txt", "scalar f\nlove abc\n");
    CHECK(load_error(dir).find("s.txt:2") != std::string::npos);
  }
  SUBCASE("missing lexicon file") {
    TempDir dir;
    dir.write("manifest.txt", "nowhere.txt\n");
    CHECK(load_error(dir).find("nowhere.txt") != std::string::npos);
  }
}

TEST_CASE("schema hash tracks content") {
  const LexiconBundle a{{CategoryLexicon("c", LexiconFamily::kLiwc, {"x", "y"})}, {}, "v1"};
  const LexiconBundle b{{CategoryLexicon("c", LexiconFamily::kLiwc, {"y", "x"})}, {}, "v2"};
  const LexiconBundle c{{CategoryLexicon("c", LexiconFamily::kLiwc, {"x", "z"})}, {}, "v1"};
  CHECK(a.schema_hash() == b.schema_hash());
  CHECK(a.schema_hash() != c.schema_hash());
  CHECK(a.schema_hash().size() == 16);
}

TEST_CASE("demonstration bundle loads") {
  const auto bundle = load_bundle(lyrank::testing::demo_bundle());
  CHECK(bundle.categories.size() >= 30);
  CHECK(bundle.scalars.size() == 2);
  CHECK(bundle.feature_count() == 2 + bundle.categories.size() + bundle.scalars.size());
  for (LexiconFamily f : {LexiconFamily::kBiber, LexiconFamily::kWordnet, LexiconFamily::kLcm,
                          LexiconFamily::kEmotionBasic, LexiconFamily::kEmotionComplex,
                          LexiconFamily::kConnective, LexiconFamily::kLiwc}) {
    CHECK(std::any_of(bundle.categories.begin(), bundle.categories.end(),
                      [&](const CategoryLexicon& c) { return c.family() == f; }));
  }
}

}  // TEST_SUITE
