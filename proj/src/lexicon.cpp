#include "lyrank/lexicon.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "lyrank/error.hpp"

namespace lyrank {

namespace {

constexpr std::pair<LexiconFamily, std::string_view> kFamilies[] = {
    {LexiconFamily::kBiber, "BIBER"},
    {LexiconFamily::kWordnet, "WORDNET"},
    {LexiconFamily::kLcm, "LCM"},
    {LexiconFamily::kEmotionBasic, "EMOTION_BASIC"},
    {LexiconFamily::kEmotionComplex, "EMOTION_COMPLEX"},
    {LexiconFamily::kConnective, "CONNECTIVE"},
    {LexiconFamily::kLiwc, "LIWC"},
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> parts;
  std::istringstream in{std::string(s)};
  std::string p;
  while (in >> p) parts.push_back(p);
  return parts;
}

struct Line {
  std::size_t number;
  std::string text;
};

/// Non-blank, non-comment lines, trimmed.
std::vector<Line> content_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path.string() + "'");
  std::vector<Line> lines;
  std::string raw;
  std::size_t n = 0;
  while (std::getline(in, raw)) {
    ++n;
    const auto t = trim(raw);
    if (t.empty() || t.front() == '#') continue;
    lines.push_back({n, std::string(t)});
  }
  return lines;
}

std::uint64_t fnv1a(std::string_view data, std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (const unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string_view family_name(LexiconFamily family) noexcept {
  for (const auto& [f, name] : kFamilies) {
    if (f == family) return name;
  }
  return "UNKNOWN";
}

std::optional<LexiconFamily> parse_family(std::string_view text) noexcept {
  for (const auto& [f, name] : kFamilies) {
    if (name == text) return f;
  }
  return std::nullopt;
}

std::optional<std::string> validate_pattern(std::string_view pattern) {
  if (pattern.empty()) return "empty pattern";
  if (pattern == "*") return "wildcard without a stem";
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    const char c = pattern[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
      return "pattern contains whitespace";
    }
    if (c >= 'A' && c <= 'Z') return "pattern is not lowercase";
    if (c == '*' && i + 1 != pattern.size()) return "'*' allowed only in final position";
  }
  return std::nullopt;
}

CategoryLexicon::CategoryLexicon(std::string name, LexiconFamily family,
                                 std::vector<std::string> patterns)
    : name_(std::move(name)), family_(family), patterns_(std::move(patterns)) {
  for (const auto& p : patterns_) {
    if (auto err = validate_pattern(p)) {
      throw ValidationError("lexicon '" + name_ + "': pattern '" + p + "': " + *err);
    }
    if (p.back() == '*') {
      stems_.push_back(p.substr(0, p.size() - 1));
    } else {
      literals_.insert(p);
    }
  }
  std::sort(stems_.begin(), stems_.end());
  stems_.erase(std::unique(stems_.begin(), stems_.end()), stems_.end());
}

bool CategoryLexicon::matches(std::string_view token) const {
  if (literals_.count(std::string(token)) != 0) return true;
  return std::any_of(stems_.begin(), stems_.end(),
                     [&](const std::string& stem) { return token.starts_with(stem); });
}

std::vector<std::string> CategoryLexicon::literals() const {
  std::vector<std::string> out;
  for (const auto& p : patterns_) {
    if (p.back() != '*' && std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  }
  return out;
}

ScalarLexicon::ScalarLexicon(std::string name,
                             std::vector<std::pair<std::string, double>> entries)
    : name_(std::move(name)), entries_(std::move(entries)) {
  for (const auto& [token, value] : entries_) {
    if (!std::isfinite(value)) {
      throw ValidationError("scalar lexicon '" + name_ + "': non-finite value for '" + token + "'");
    }
    if (!values_.emplace(token, value).second) {
      throw ValidationError("scalar lexicon '" + name_ + "': duplicate token '" + token + "'");
    }
  }
}

std::optional<double> ScalarLexicon::lookup(std::string_view token) const {
  const auto it = values_.find(std::string(token));
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::string LexiconBundle::schema_hash() const {
  std::uint64_t h = fnv1a("lyrank-schema-v1\n");
  for (const auto& cat : categories) {
    std::vector<std::string> sorted = cat.patterns();
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    h = fnv1a("C|" + cat.name() + "|" + std::string(family_name(cat.family())) + "\n", h);
    for (const auto& p : sorted) h = fnv1a(p + "\n", h);
  }
  for (const auto& sc : scalars) {
    auto sorted = sc.entries();
    std::sort(sorted.begin(), sorted.end());
    h = fnv1a("S|" + sc.name() + "\n", h);
    for (const auto& [token, value] : sorted) h = fnv1a(token + "=" + format_double(value) + "\n", h);
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<std::string> LexiconBundle::feature_names() const {
  std::vector<std::string> names{"word_count", "type_token_ratio"};
  for (const auto& c : categories) names.push_back(c.name());
  for (const auto& s : scalars) names.push_back(s.name());
  return names;
}

namespace {

void load_lexicon_file(const std::filesystem::path& path, LexiconBundle& bundle) {
  const auto lines = content_lines(path);
  const std::string where = path.string();
  if (lines.empty()) throw ValidationError(where + ": empty lexicon file");

  const auto header = split_ws(lines.front().text);
  auto fail = [&](std::size_t line, const std::string& msg) {
    throw ValidationError(where + ":" + std::to_string(line) + ": " + msg);
  };

  if (header.size() == 3 && header[0] == "category") {
    const auto family = parse_family(header[2]);
    if (!family) fail(lines.front().number, "unknown family '" + header[2] + "'");
    std::vector<std::string> patterns;
    for (std::size_t i = 1; i < lines.size(); ++i) {
      if (auto err = validate_pattern(lines[i].text)) {
        fail(lines[i].number, "malformed pattern '" + lines[i].text + "': " + *err);
      }
      patterns.push_back(lines[i].text);
    }
    bundle.categories.emplace_back(header[1], *family, std::move(patterns));
  } else if (header.size() == 2 && header[0] == "scalar") {
    std::vector<std::pair<std::string, double>> entries;
    for (std::size_t i = 1; i < lines.size(); ++i) {
      const auto parts = split_ws(lines[i].text);
      if (parts.size() != 2) fail(lines[i].number, "expected '<token> <value>'");
      if (auto err = validate_pattern(parts[0]); err || parts[0].back() == '*') {
        fail(lines[i].number, "malformed token '" + parts[0] + "'");
      }
      double value = 0.0;
      const auto& v = parts[1];
      const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), value);
      if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(value)) {
        fail(lines[i].number, "bad value '" + v + "'");
      }
      entries.emplace_back(parts[0], value);
    }
    try {
      bundle.scalars.emplace_back(header[1], std::move(entries));
    } catch (const ValidationError& e) {
      throw ValidationError(where + ": " + e.what());
    }
  } else {
    fail(lines.front().number,
         "header must be 'category <name> <family>' or 'scalar <name>'");
  }
}

}  // namespace

LexiconBundle load_bundle(const std::filesystem::path& dir) {
  const auto manifest = dir / "manifest.txt";
  if (!std::filesystem::is_regular_file(manifest)) {
    throw ValidationError("missing bundle manifest '" + manifest.string() + "'");
  }
  LexiconBundle bundle;
  for (const auto& line : content_lines(manifest)) {
    if (line.text.starts_with("version ")) {
      bundle.version = std::string(trim(std::string_view(line.text).substr(8)));
      continue;
    }
    load_lexicon_file(dir / line.text, bundle);
  }

  std::vector<std::string> names;
  for (const auto& c : bundle.categories) names.push_back(c.name());
  for (const auto& s : bundle.scalars) names.push_back(s.name());
  names.push_back("word_count");
  names.push_back("type_token_ratio");
  std::sort(names.begin(), names.end());
  if (const auto dup = std::adjacent_find(names.begin(), names.end()); dup != names.end()) {
    throw ValidationError(manifest.string() + ": duplicate lexicon name '" + *dup + "'");
  }
  return bundle;
}

}  // namespace lyrank
