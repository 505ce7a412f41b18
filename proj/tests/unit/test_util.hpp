#pragma once

#include <filesystem>
#include <fstream>
#include <unistd.h>
#include <string>

#include "lyrank/rng.hpp"

namespace lyrank::testing {

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::uint64_t counter = 0;
    SplitMix64 g(static_cast<std::uint64_t>(::getpid()) * 1000003 + counter++);
    path_ = std::filesystem::temp_directory_path() / ("lyrank-test-" + std::to_string(g.next()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::string str(const std::string& name) const { return (path_ / name).string(); }

  void write(const std::string& name, const std::string& content) const {
    const auto p = path_ / name;
    std::filesystem::create_directories(p.parent_path());
    std::ofstream(p) << content;
  }

 private:
  std::filesystem::path path_;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline std::string demo_bundle() { return std::string(LYRANK_DATA_DIR) + "/demo_bundle"; }
inline std::string demo_corpus() { return std::string(LYRANK_DATA_DIR) + "/demo_corpus.jsonl"; }

}  // namespace lyrank::testing
