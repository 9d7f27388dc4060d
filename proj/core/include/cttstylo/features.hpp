#pragma once

// Runs every enabled extractor over a set of samples and assembles the
// feature matrix, with CSV export and a JSON metadata sidecar.

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "cttstylo/corpus.hpp"
#include "cttstylo/feat_ctt.hpp"
#include "cttstylo/feat_generic.hpp"
#include "cttstylo/matrix.hpp"
#include "cttstylo/resources.hpp"

namespace cttstylo {

// The eight feature sub-levels; the first four are generic, the rest CTT.
enum class Family { Lexical, Syntactic, Readability, Ngram, Repetition, Rhythm, Translatability, Misc };

inline constexpr std::array<Family, 8> kAllFamilies{Family::Lexical,    Family::Syntactic, Family::Readability,
                                                    Family::Ngram,      Family::Repetition, Family::Rhythm,
                                                    Family::Translatability, Family::Misc};

std::string_view family_name(Family f);
std::optional<Family> parse_family(std::string_view name);
bool is_generic(Family f);
// Derived from the name prefix; nullopt for names no extractor produces.
std::optional<Family> family_of(std::string_view feature_name);
// "proxy" for rdprx_* features, "measured" otherwise.
std::string_view provenance_of(std::string_view feature_name);

struct ExtractionConfig {
  std::array<bool, 8> enabled{true, true, true, true, true, true, true, true};
  bool concreteness = true;  // part of the readability sub-level
  TagConfig tags;
  DeprelConfig deprels;
  LexicalParams lexical;
  ReadabilityParams readability;
  KeynessParams keyness;
  bool aa = true, aaa = true, abab = true, aabb = true;

  bool on(Family f) const { return enabled[static_cast<std::size_t>(f)]; }
  void set(Family f, bool v) { enabled[static_cast<std::size_t>(f)] = v; }
};

// Lexicons a configuration cannot run without; empty when complete.
std::vector<std::string> missing_resources(const ExtractionConfig& cfg, const LexiconBundle& lex);

struct ExtractionResult {
  FeatureMatrix matrix;
  std::vector<NgramSpec> ngram_specs;
  std::vector<std::pair<std::string, std::string>> flags;  // (sample id, flag)
};

// Throws Error naming the family and sample when an extractor fails or
// yields a negative or non-finite value.
ExtractionResult extract_features(std::span<const Chunk> samples, const LexiconBundle& lex,
                                  const ExtractionConfig& cfg);

FeatureVector extract_sample(const Chunk& sample, const LexiconBundle& lex, const ExtractionConfig& cfg,
                             std::span<const NgramSpec> ngram_specs);

// Header `sample_id,group,<feature...>`.
void write_matrix_csv(std::ostream& out, const FeatureMatrix& m);
nlohmann::json matrix_metadata(const ExtractionResult& r);
// Reads a matrix CSV; sample metadata (document, engine, tokens) comes from
// the sidecar when given, else documents are derived from "<doc>:<n>" ids.
FeatureMatrix read_matrix_csv(std::istream& in, const nlohmann::json* metadata = nullptr);

}  // namespace cttstylo
