#include "lyrank/corpus.hpp"

#include <fstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "lyrank/error.hpp"

namespace lyrank {

namespace {

constexpr std::string_view kEmDash = "\xE2\x80\x94";

bool is_strip_char(char c) noexcept {
  switch (c) {
    case '.': case ',': case '!': case '?': case ';': case ':':
    case '\'': case '"': case '(': case ')': case '[': case ']':
    case '{': case '}': case '-':
      return true;
    default:
      return false;
  }
}

bool is_space(char c) noexcept {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

}  // namespace

std::string_view label_name(Label label) noexcept {
  return label == Label::kTop ? "TOP" : "BOTTOM";
}

Label parse_label(std::string_view text) {
  if (text == "TOP") return Label::kTop;
  if (text == "BOTTOM") return Label::kBottom;
  throw ValidationError("unknown label '" + std::string(text) + "'");
}

std::string clean_lyrics(std::string_view raw) {
  // Pass 1: markup and strip-set characters become spaces, ASCII lowercased.
  std::string spaced;
  spaced.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size();) {
    const char c = raw[i];
    if (c == '<') {
      const auto close = raw.find('>', i + 1);
      if (close != std::string_view::npos) {
        spaced.push_back(' ');
        i = close + 1;
        continue;
      }
    }
    if (raw.substr(i, kEmDash.size()) == kEmDash) {
      spaced.push_back(' ');
      i += kEmDash.size();
      continue;
    }
    if (is_strip_char(c)) {
      spaced.push_back(' ');
    } else if (c >= 'A' && c <= 'Z') {
      spaced.push_back(static_cast<char>(c - 'A' + 'a'));
    } else {
      spaced.push_back(c);
    }
    ++i;
  }

  // Pass 2: collapse whitespace runs and trim.
  std::string out;
  out.reserve(spaced.size());
  bool pending_space = false;
  for (const char c : spaced) {
    if (is_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

std::vector<std::string> tokenize(std::string_view cleaned) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < cleaned.size()) {
    while (i < cleaned.size() && is_space(cleaned[i])) ++i;
    const std::size_t start = i;
    while (i < cleaned.size() && !is_space(cleaned[i])) ++i;
    if (i > start) tokens.emplace_back(cleaned.substr(start, i - start));
  }
  return tokens;
}

SongRecord make_song(std::string id, std::string title, std::string artist, int year,
                     std::vector<int> weekly_ranks, std::string raw_lyrics) {
  if (weekly_ranks.empty()) throw ValidationError("song '" + id + "' has no ranks");
  for (const int rank : weekly_ranks) {
    if (rank < 1 || rank > 100) {
      throw ValidationError("song '" + id + "' has rank " + std::to_string(rank) +
                            " outside [1,100]");
    }
  }
  SongRecord song;
  song.id = std::move(id);
  song.title = std::move(title);
  song.artist = std::move(artist);
  song.year = year;
  song.weekly_ranks = std::move(weekly_ranks);
  song.raw_lyrics = std::move(raw_lyrics);
  song.cleaned_lyrics = clean_lyrics(song.raw_lyrics);
  song.tokens = tokenize(song.cleaned_lyrics);
  return song;
}

namespace {

SongRecord parse_record(const nlohmann::json& obj) {
  if (!obj.is_object()) throw ValidationError("record is not an object");

  auto string_field = [&](const char* key) -> std::string {
    const auto it = obj.find(key);
    if (it == obj.end() || !it->is_string()) {
      throw ValidationError(std::string("missing or non-string field '") + key + "'");
    }
    return it->get<std::string>();
  };
  auto int_value = [](const nlohmann::json& v, const char* what) -> int {
    if (!v.is_number_integer()) throw ValidationError(std::string(what) + " must be an integer");
    return v.get<int>();
  };

  std::string id = string_field("id");
  if (id.empty()) throw ValidationError("empty id");

  const auto year_it = obj.find("year");
  if (year_it == obj.end()) throw ValidationError("missing field 'year'");
  const int year = int_value(*year_it, "year");

  const auto weekly = obj.find("weekly_ranks");
  const auto peak = obj.find("peak_rank");
  if ((weekly == obj.end()) == (peak == obj.end())) {
    throw ValidationError("exactly one of 'weekly_ranks' or 'peak_rank' is required");
  }
  std::vector<int> ranks;
  if (weekly != obj.end()) {
    if (!weekly->is_array()) throw ValidationError("'weekly_ranks' must be an array");
    for (const auto& r : *weekly) ranks.push_back(int_value(r, "weekly rank"));
  } else {
    ranks.push_back(int_value(*peak, "peak_rank"));
  }

  return make_song(std::move(id), string_field("title"), string_field("artist"), year,
                   std::move(ranks), string_field("lyrics"));
}

}  // namespace

std::vector<SongRecord> parse_corpus(std::istream& source) {
  std::vector<SongRecord> songs;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(source, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto obj = nlohmann::json::parse(line);
      SongRecord song = parse_record(obj);
      if (!seen.insert(song.id).second) {
        throw ValidationError("duplicate id '" + song.id + "'");
      }
      songs.push_back(std::move(song));
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError("line " + std::to_string(line_no) + ": malformed record: " + e.what());
    } catch (const ValidationError& e) {
      throw ValidationError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return songs;
}

std::vector<SongRecord> load_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open corpus file '" + path + "'");
  try {
    return parse_corpus(in);
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

std::string corpus_line(const SongRecord& song) {
  nlohmann::ordered_json obj;
  obj["id"] = song.id;
  obj["title"] = song.title;
  obj["artist"] = song.artist;
  obj["year"] = song.year;
  obj["weekly_ranks"] = song.weekly_ranks;
  obj["lyrics"] = song.raw_lyrics;
  return obj.dump();
}

std::optional<LabeledSong> derive_label(const SongRecord& song, RankCuts cuts) {
  if (!(1 <= cuts.top_cut && cuts.top_cut < cuts.bottom_cut && cuts.bottom_cut <= 100)) {
    throw ValidationError("rank cuts must satisfy 1 <= top_cut < bottom_cut <= 100");
  }
  if (song.weekly_ranks.empty()) throw ValidationError("song '" + song.id + "' has no ranks");
  int peak = song.weekly_ranks.front();
  for (const int r : song.weekly_ranks) peak = std::min(peak, r);

  if (peak <= cuts.top_cut) return LabeledSong{song, peak, Label::kTop};
  if (peak >= cuts.bottom_cut) return LabeledSong{song, peak, Label::kBottom};
  return std::nullopt;
}

std::vector<LabeledSong> label_corpus(const std::vector<SongRecord>& songs, RankCuts cuts,
                                      LabelTally* tally) {
  std::vector<LabeledSong> out;
  LabelTally counts;
  for (const auto& song : songs) {
    auto labeled = derive_label(song, cuts);
    if (!labeled) {
      ++counts.excluded;
      continue;
    }
    ++(labeled->label == Label::kTop ? counts.top : counts.bottom);
    out.push_back(std::move(*labeled));
  }
  if (tally) *tally = counts;
  return out;
}

}  // namespace lyrank
