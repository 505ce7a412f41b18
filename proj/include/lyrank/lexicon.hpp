#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace lyrank {

/// The eight resource families a category can stand in for.
enum class LexiconFamily {
  kBiber,
  kWordnet,
  kLcm,
  kEmotionBasic,
  kEmotionComplex,
  kConnective,
  kLiwc,
};

std::string_view family_name(LexiconFamily family) noexcept;
std::optional<LexiconFamily> parse_family(std::string_view text) noexcept;

/// A word category. Entries are literal tokens or prefix patterns "stem*".
class CategoryLexicon {
 public:
  CategoryLexicon(std::string name, LexiconFamily family, std::vector<std::string> patterns);

  const std::string& name() const noexcept { return name_; }
  LexiconFamily family() const noexcept { return family_; }
  /// Patterns in file order.
  const std::vector<std::string>& patterns() const noexcept { return patterns_; }

  /// True iff the token equals a literal entry or starts with a stem.
  bool matches(std::string_view token) const;

  /// Literal (non-wildcard) entries in file order.
  std::vector<std::string> literals() const;

 private:
  std::string name_;
  LexiconFamily family_;
  std::vector<std::string> patterns_;
  std::unordered_set<std::string> literals_;
  std::vector<std::string> stems_;
};

/// Word-level numeric norms (frequency, familiarity, ...). Tokens missing
/// from the table are skipped when averaging.
class ScalarLexicon {
 public:
  ScalarLexicon(std::string name, std::vector<std::pair<std::string, double>> entries);

  const std::string& name() const noexcept { return name_; }
  /// Entries in file order.
  const std::vector<std::pair<std::string, double>>& entries() const noexcept { return entries_; }

  std::optional<double> lookup(std::string_view token) const;

 private:
  std::string name_;
  std::vector<std::pair<std::string, double>> entries_;
  std::unordered_map<std::string, double> values_;
};

/// Returns an error message if the pattern is malformed, std::nullopt if valid.
std::optional<std::string> validate_pattern(std::string_view pattern);

struct LexiconBundle {
  std::vector<CategoryLexicon> categories;
  std::vector<ScalarLexicon> scalars;
  std::string version;

  /// FNV-1a 64 over a canonical dump of the bundle contents, hex encoded.
  std::string schema_hash() const;
  /// word_count, type_token_ratio, categories..., scalars...
  std::vector<std::string> feature_names() const;
  std::size_t feature_count() const noexcept { return 2 + categories.size() + scalars.size(); }
};

/// Loads a bundle directory. manifest.txt lists lexicon files one per line
/// in schema order; an optional "version <text>" line sets the version.
/// Category file: header "category <name> <family>" then one pattern per
/// line. Scalar file: header "scalar <name>" then "<token> <value>" lines.
/// '#' starts a comment line.
LexiconBundle load_bundle(const std::filesystem::path& dir);

}  // namespace lyrank
