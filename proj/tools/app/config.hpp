#pragma once

// Run configuration: an INI file (top-level keys plus [sections]) whose
// relative paths resolve against the file's own directory.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cttstylo/classify.hpp"
#include "cttstylo/cluster.hpp"
#include "cttstylo/corpus.hpp"
#include "cttstylo/features.hpp"

namespace cttstylo::app {

struct ClusterSettings {
  KmeansParams kmeans;
  std::vector<std::size_t> sweep{2, 3, 4, 5, 6};
  std::size_t mfw = 100;
  MfwUnit mfw_unit = MfwUnit::Word;
  DeltaParams delta;
  Linkage linkage = Linkage::Average;
};

struct StatsSettings {
  double alpha = 0.05;
  std::size_t min_n = 8;
  std::vector<std::string> features;
};

struct RunConfig {
  std::filesystem::path source;
  std::string hash;  // of the raw config bytes
  std::uint64_t seed = 0;
  std::vector<std::filesystem::path> corpus;
  std::optional<std::filesystem::path> matrix;  // precomputed matrix CSV
  std::filesystem::path output = "out";
  ChunkParams chunk;
  ExtractionConfig extraction;
  std::map<std::string, std::filesystem::path> lexicons;  // key -> path
  std::size_t select_k = 30;
  CvPlan cv;
  Hyperparameters hp;
  ClusterSettings cluster;
  StatsSettings stats;

  void set_seed(std::uint64_t s) { seed = cv.seed = cluster.kmeans.seed = s; }
  nlohmann::json to_json() const;
};

// Lexicon keys accepted in [lexicons].
const std::vector<std::string>& lexicon_keys();

// Parses and validates; throws Error naming the file and key.
RunConfig load_config(const std::filesystem::path& path);
RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir,
                       const std::string& source_name = "<config>");

// Loads the lexicons the configuration names and checks that every enabled
// family has what it needs.
LexiconBundle load_lexicons(const RunConfig& cfg);

}  // namespace cttstylo::app
