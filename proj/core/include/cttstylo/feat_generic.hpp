#pragma once

// Generic textual features: lexical diversity and word-class ratios,
// dependency-based syntax measures, readability proxies, concreteness and
// reference-keyed n-gram frequencies.

#include <array>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "cttstylo/corpus.hpp"
#include "cttstylo/feature_vector.hpp"
#include "cttstylo/resources.hpp"

namespace cttstylo {

double compute_ttr(std::span<const std::string> tokens);
// Mean TTR over consecutive full windows; the trailing partial window is
// ignored. Falls back to TTR when there are fewer tokens than one window.
double compute_sttr(std::span<const std::string> tokens, std::size_t window = 1000);
// Bidirectional mean of the directional MTLD factor counts.
double compute_mtld(std::span<const std::string> tokens, double threshold = 0.72);
double compute_mtld_directional(std::span<const std::string> tokens, double threshold = 0.72);

// Word-class groupings over the annotation tagset. Defaults follow the LTP
// tagset.
struct TagConfig {
  std::vector<std::string> tagset{"a", "b", "c", "d", "e", "g", "h", "i", "j", "k", "m", "n", "nd", "nh", "ni",
                                  "nl", "ns", "nt", "nz", "o", "p", "q", "r", "u", "v", "wp", "ws", "x", "z"};
  std::set<std::string> content{"n", "nd", "nh", "ni", "nl", "ns", "nt", "nz", "v", "a", "d", "i", "j"};
  std::set<std::string> descriptive{"a", "b", "z"};
  std::set<std::string> function{"c", "p", "u", "e"};
  std::set<std::string> punctuation{"wp"};
  std::string adverb = "d";
  std::string conjunction = "c";
  std::string preposition = "p";
  std::string idiom = "i";
};

struct DeprelConfig {
  std::vector<std::string> relations{"SBV", "VOB", "IOB", "FOB", "DBL", "ATT", "ADV", "CMP",
                                     "COO", "POB", "LAD", "RAD", "IS",  "WP",  "HED"};
};

struct LexicalParams {
  std::size_t sttr_window = 1000;
  double mtld_threshold = 0.72;
};

// lex_ttr, lex_sttr, lex_mtld.
FeatureVector lexical_diversity_features(std::span<const Sentence> sample, const LexicalParams& params = {});

// lex_pos_<tag> for every tag plus lex_pos_OTHER, and the grouped ratios.
// Idioms come from `idioms` when given, otherwise from the idiom tag.
FeatureVector pos_ratio_features(std::span<const Sentence> sample, const TagConfig& tags,
                                 const WordList* idioms = nullptr);

// syn_* features. Flags "no-deps" when the sample has no non-root arcs.
FeatureVector syntactic_features(std::span<const Sentence> sample, const DeprelConfig& deprels = {});
double mean_dependency_distance(std::span<const Sentence> sample);
double avg_children_per_node(std::span<const Sentence> sample);

struct ReadabilityParams {
  std::size_t richness_top = 3000;
};

// rdprx_* proxies; see README for definitions.
FeatureVector readability_features(std::span<const Sentence> sample, const RefNgramTable& ref,
                                   const TagConfig& tags, const ReadabilityParams& params = {});

// conc_mean, conc_sd (population), conc_coverage, conc_high_ratio.
FeatureVector concreteness_features(std::span<const Sentence> sample, const ScalarLexicon& lex);

// --- n-grams ---------------------------------------------------------------

struct NgramSpec {
  UnitKind kind = UnitKind::Word;
  int n = 1;
  std::vector<std::string> gram;
  double keyness = 0.0;
  std::int64_t corpus_count = 0;
  std::int64_t reference_count = 0;

  // e.g. word_1gram_一样, pos_2gram_v_n
  std::string feature_name() const;
};

// Per-(kind, n) counts keyed by the joined gram. Bucket index = kind * 3 + n - 1.
struct NgramCounts {
  std::array<std::unordered_map<std::string, std::int64_t>, 6> counts;
  std::array<std::int64_t, 6> totals{};

  static std::size_t bucket(UnitKind kind, int n) { return static_cast<std::size_t>(kind) * 3 + (n - 1); }
  void add(std::span<const Sentence> sample);
};

NgramCounts count_ngrams(std::span<const Sentence> sample);

// Log-likelihood keyness of a study-corpus count `a` (total `c`) against a
// reference count `b` (total `d`). Zero counts are smoothed to 0.5.
double log_likelihood_g2(double a, double b, double c, double d);

struct KeynessParams {
  std::size_t per_bucket = 52;
  std::int64_t min_count = 5;
};

std::vector<NgramSpec> ngram_keyness_select(std::span<const Chunk> samples, const RefNgramTable& ref,
                                            const KeynessParams& params = {});

FeatureVector ngram_feature_values(std::span<const Sentence> sample, std::span<const NgramSpec> specs);

}  // namespace cttstylo
