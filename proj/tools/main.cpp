#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "app/commands.hpp"
#include "cttstylo/error.hpp"
#include "cttstylo/text.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Stylometry toolkit for annotated Chinese translation corpora"};
  app.require_subcommand(1);
  app.set_version_flag("--version", CTTSTYLO_VERSION);

  std::string config;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::string features;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config, "INI run configuration")->required();
    sub->add_option("--out", out, "output directory (overrides config)");
    sub->add_option("--seed", seed, "global seed (overrides config)");
  };
  auto* extract = app.add_subcommand("extract", "write the feature matrix and its metadata sidecar");
  auto* classify = app.add_subcommand("classify", "sub-level accuracy table and pairwise engine matrix");
  auto* cluster = app.add_subcommand("cluster", "k-means, ARI, k sweep and delta dendrogram");
  auto* stats = app.add_subcommand("stats", "group-difference tests for named features");
  for (auto* s : {extract, classify, cluster, stats}) add_common(s);
  auto* feat_opt = stats->add_option("--features", features, "comma-separated feature names");

  CLI11_PARSE(app, argc, argv);

  try {
    const std::optional<std::filesystem::path> out_dir =
        out ? std::optional<std::filesystem::path>(*out) : std::nullopt;
    auto ctx = cttstylo::app::make_context(config, out_dir, seed, std::cerr);
    if (*extract) {
      cttstylo::app::cmd_extract(ctx);
    } else if (*classify) {
      cttstylo::app::cmd_classify(ctx);
    } else if (*cluster) {
      cttstylo::app::cmd_cluster(ctx);
    } else {
      std::optional<std::vector<std::string>> names;
      if (*feat_opt) names = cttstylo::text::split_list(features);
      cttstylo::app::cmd_stats(ctx, names);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
