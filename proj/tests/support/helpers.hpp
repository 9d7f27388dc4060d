#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "cttstylo/corpus.hpp"
#include "cttstylo/resources.hpp"

namespace cttstylo::testing {

inline std::filesystem::path data_path(const std::string& name) { return std::filesystem::path(CTTSTYLO_TEST_DATA) / name; }

inline Document parse_one(const std::string& body) {
  std::istringstream in(body);
  return parse_annotated_text(in, DocumentMeta{"t", Group::Unlabeled, ""});
}

inline WordList words(std::string name, std::initializer_list<const char*> entries) {
  std::unordered_set<std::string> s;
  for (const char* e : entries) s.emplace(e);
  return WordList(std::move(name), std::move(s));
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    path_ = std::filesystem::temp_directory_path() /
            ("cttstylo-" + tag + "-" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace cttstylo::testing
