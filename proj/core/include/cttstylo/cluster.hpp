#pragma once

// K-means with ARI scoring, most-frequent-word delta distances and
// agglomerative clustering with Newick export.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cttstylo/corpus.hpp"
#include "cttstylo/matrix.hpp"

namespace cttstylo {

struct KmeansParams {
  std::size_t k = 2;
  std::uint64_t seed = 0;
  std::size_t n_init = 10;
  std::size_t max_iter = 300;
  double tol = 1e-6;
};

struct KmeansResult {
  std::vector<int> assignment;
  Matrix centroids;
  double inertia = 0.0;
  std::size_t iterations = 0;
  std::vector<double> inertia_history;  // of the winning restart, one per Lloyd step
  std::size_t repaired_clusters = 0;
};

KmeansResult kmeans(const Matrix& x, const KmeansParams& params);

// Pair-counting ARI. Degenerate case (both labelings a single cluster, or
// both all singletons) returns 1.0.
double adjusted_rand_index(std::span<const int> truth, std::span<const int> pred);

enum class MfwUnit { Word, Char };

// Units of a document for frequency counting; tokens carrying no letter,
// ideograph or digit are left out.
std::vector<std::string> mfw_units(const Document& doc, MfwUnit unit);

struct MfwTable {
  std::vector<std::string> words;        // rank order
  std::vector<std::size_t> corpus_counts;
  std::vector<std::string> documents;
  Matrix relative;                       // documents x words
  Matrix z;
  bool truncated = false;                // fewer distinct words than requested
};

MfwTable mfw_table(std::span<const std::string> doc_ids, const std::vector<std::vector<std::string>>& units,
                   std::size_t n = 100);

enum class DeltaKind { Burrows, Eder };

struct DeltaParams {
  DeltaKind kind = DeltaKind::Eder;
  double eder_offset = 1.0;  // weight of rank i (1-based) is (n - i + offset) / n
};

double delta_distance(std::span<const double> za, std::span<const double> zb, const DeltaParams& p = {});
double delta_distance(const MfwTable& t, std::string_view a, std::string_view b, const DeltaParams& p = {});
Matrix delta_matrix(const MfwTable& t, const DeltaParams& p = {});

enum class Linkage { Average, Single, Complete };

struct DendrogramNode {
  std::string id;  // leaves only
  double height = 0.0;
  std::unique_ptr<DendrogramNode> left, right;

  bool leaf() const noexcept { return !left; }
  std::vector<std::string> leaves() const;
};

std::unique_ptr<DendrogramNode> agglomerative_cluster(const Matrix& distance, std::span<const std::string> ids,
                                                      Linkage linkage = Linkage::Average);

std::string write_newick(const DendrogramNode& root);
std::unique_ptr<DendrogramNode> parse_newick(std::string_view text);

struct SweepRow {
  std::size_t k = 0;
  std::optional<double> ari;
  double inertia = 0.0;
};

// `truth` may be empty (no ARI column values).
std::vector<SweepRow> sweep_k(const Matrix& x, std::span<const std::size_t> ks, std::span<const int> truth,
                              const KmeansParams& base);

}  // namespace cttstylo
