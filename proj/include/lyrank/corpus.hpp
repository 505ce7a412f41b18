#pragma once

#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lyrank {

enum class Label { kTop, kBottom };

/// +1 for TOP, -1 for BOTTOM.
inline int sign_of(Label label) noexcept { return label == Label::kTop ? 1 : -1; }
std::string_view label_name(Label label) noexcept;
Label parse_label(std::string_view text);

struct SongRecord {
  std::string id;
  std::string title;
  std::string artist;
  int year = 0;
  std::vector<int> weekly_ranks;
  std::string raw_lyrics;
  std::string cleaned_lyrics;
  std::vector<std::string> tokens;
};

struct LabeledSong {
  SongRecord song;
  int peak_rank = 0;
  Label label = Label::kTop;
};

struct RankCuts {
  int top_cut = 30;
  int bottom_cut = 71;

  bool operator==(const RankCuts&) const = default;
};

/// Strips <...> markup, replaces the characters .,!?;:'"()[]{} as well as
/// '-' and the em-dash with spaces, lowercases ASCII, collapses whitespace
/// runs and trims.
std::string clean_lyrics(std::string_view raw);

/// Whitespace split; never yields empty tokens.
std::vector<std::string> tokenize(std::string_view cleaned);

/// Builds a record and fills cleaned_lyrics/tokens. Throws ValidationError
/// for an empty rank list or a rank outside [1,100].
SongRecord make_song(std::string id, std::string title, std::string artist, int year,
                     std::vector<int> weekly_ranks, std::string raw_lyrics);

/// Reads one JSON object per line (blank lines skipped). Keys: id, title,
/// artist, year, lyrics, and either weekly_ranks (array) or peak_rank (int).
/// Errors carry the 1-based line number.
std::vector<SongRecord> parse_corpus(std::istream& source);
std::vector<SongRecord> load_corpus(const std::string& path);

/// Serializes a record to the corpus line format (without trailing newline).
std::string corpus_line(const SongRecord& song);

/// std::nullopt means EXCLUDED: the peak falls strictly between the cuts.
std::optional<LabeledSong> derive_label(const SongRecord& song, RankCuts cuts = {});

struct LabelTally {
  std::size_t top = 0;
  std::size_t bottom = 0;
  std::size_t excluded = 0;
};

/// Labels every song, dropping EXCLUDED ones; order is preserved.
std::vector<LabeledSong> label_corpus(const std::vector<SongRecord>& songs, RankCuts cuts,
                                      LabelTally* tally = nullptr);

}  // namespace lyrank
