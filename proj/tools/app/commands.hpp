#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "app/config.hpp"
#include "cttstylo/features.hpp"

namespace cttstylo::app {

struct CommandContext {
  RunConfig config;
  std::filesystem::path out;
  std::ostream* log;
  std::vector<std::string> warnings;

  void warn(const std::string& msg);
  void info(const std::string& msg) const;
};

// Applies --out/--seed overrides on top of the loaded config.
CommandContext make_context(const std::filesystem::path& config_path, const std::optional<std::filesystem::path>& out,
                            const std::optional<std::uint64_t>& seed, std::ostream& log);

std::vector<Document> load_documents(const RunConfig& cfg);

// The precomputed matrix when configured, else a fresh extraction.
FeatureMatrix obtain_matrix(CommandContext& ctx, const std::vector<Document>& docs);

struct GroupPair {
  std::string name;
  std::vector<Group> first, second;
};
const std::vector<GroupPair>& group_pairs();

struct Table2Row {
  std::string level, sublevel, pair;
  double acc = 0.0;
};

void cmd_extract(CommandContext& ctx);
void cmd_classify(CommandContext& ctx);
void cmd_cluster(CommandContext& ctx);
// `features` replaces the configured list when set.
void cmd_stats(CommandContext& ctx, const std::optional<std::vector<std::string>>& features);

}  // namespace cttstylo::app
