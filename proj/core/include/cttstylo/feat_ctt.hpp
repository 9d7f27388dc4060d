#pragma once

// Features aimed at creative-text translation into Chinese: reduplication,
// rhythm, source-language leakage and a handful of surface markers.

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cttstylo/corpus.hpp"
#include "cttstylo/feature_vector.hpp"
#include "cttstylo/resources.hpp"

namespace cttstylo {

// --- repetition --------------------------------------------------------------

enum class RepetitionPattern { AA, AAA, ABAB, AABB };

struct RepetitionConfig {
  const WordList* stoplist = nullptr;  // e.g. kinship terms such as 妈妈
  bool aa = true;
  bool aaa = true;
  bool abab = true;
  bool aabb = true;

  // Throws if a stoplist entry is not 2-4 characters long.
  void validate() const;
};

struct RepetitionMatch {
  RepetitionPattern pattern;
  std::size_t offset;  // code-point offset in the run
  std::u32string text;
};

// Longest-match-first, non-overlapping, left-to-right scan of one run of
// CJK characters. Stoplisted substrings are consumed without counting.
std::vector<RepetitionMatch> find_repetitions(std::u32string_view run, const RepetitionConfig& cfg);

struct RepetitionCounts {
  std::size_t aa = 0, aaa = 0, abab = 0, aabb = 0;
};

RepetitionCounts count_repetitions(std::span<const Sentence> sample, const RepetitionConfig& cfg);

// rep_AA, rep_AAA, rep_ABAB, rep_AABB as matches per 1,000 tokens.
FeatureVector repetition_features(std::span<const Sentence> sample, const RepetitionConfig& cfg);

// --- rhythm ------------------------------------------------------------------

bool is_open_final(std::string_view final);

// rhy_open_syllable_ratio, rhy_rhyme_ratio, rhy_rhyme_density,
// rhy_vowel_balance, rhy_tonal_alternation. Uses each character's default
// reading; unknown characters are left out of every denominator.
FeatureVector rhythm_features(std::span<const Sentence> sample, const PinyinLexicon& pinyin);

// --- translatability ---------------------------------------------------------

enum class ScriptKind { CJK, LATIN, OTHER };

struct ScriptSpan {
  ScriptKind kind = ScriptKind::OTHER;
  std::size_t char_count = 0;
  std::size_t word_count = 0;  // LATIN only
  std::u32string text;
  bool whitespace_only = false;  // OTHER spans made of blanks
};

// Token surfaces joined, with a space between adjacent Latin-letter tokens.
std::string sentence_text(const Sentence& s);
std::vector<ScriptSpan> segment_scripts(std::u32string_view sentence);

struct TranslatabilityCounts {
  std::size_t tokens = 0;
  std::size_t latin_chars = 0;
  std::size_t cjk_chars = 0;
  std::size_t long_latin_runs = 0;  // LATIN spans of >= 3 words
  std::size_t switches = 0;
  std::size_t abbreviations = 0;
  std::size_t untranslatable = 0;
};

TranslatabilityCounts count_translatability(std::span<const Sentence> sample, const WordList* untranslatable);

// trans_completeness, trans_foreignness, trans_code_switching,
// trans_abbreviation, trans_untranslatable.
FeatureVector translatability_features(std::span<const Sentence> sample, const WordList* untranslatable = nullptr);

// --- miscellaneous -----------------------------------------------------------

struct MiscLexicons {
  const WordList* onomatopoeia = nullptr;
  const WordList* strong_modifiers = nullptr;
  const WordList* sentence_final_particles = nullptr;
  const WordList* er_stoplist = nullptr;
};

struct MiscCounts {
  std::size_t tokens = 0;
  std::size_t sentences = 0;
  std::size_t onomatopoeia = 0;
  std::size_t er_suffix = 0;
  std::size_t particle_final = 0;
  std::size_t strong_modifiers = 0;
  std::size_t quotes = 0;
};

MiscCounts count_misc(std::span<const Sentence> sample, const MiscLexicons& lex);

// misc_ratio_onomatopoeia, misc_ratio_er_suffix, misc_ratio_SentFinalParticle,
// misc_ratio_StrSentMdfyr, misc_ratio_quote.
FeatureVector misc_features(std::span<const Sentence> sample, const MiscLexicons& lex);

}  // namespace cttstylo
