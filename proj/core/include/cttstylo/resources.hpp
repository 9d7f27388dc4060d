#pragma once

// External lexicons and reference-corpus n-gram counts. All types are
// immutable after loading and safe to share across threads.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace cttstylo {

struct Syllable {
  std::string initial;  // may be empty (zero-initial syllables)
  std::string final;
  int tone = 0;         // 0 = neutral, 1-4

  friend bool operator==(const Syllable&, const Syllable&) = default;
};

class PinyinLexicon {
 public:
  PinyinLexicon() = default;

  // Default (first listed) reading; nullopt for unmapped characters.
  std::optional<Syllable> lookup(char32_t ch) const;
  std::span<const Syllable> readings(char32_t ch) const;
  std::size_t size() const noexcept { return table_.size(); }

  static PinyinLexicon parse(std::istream& in, std::string_view source = "<pinyin>");
  static PinyinLexicon load(const std::string& path);

 private:
  std::unordered_map<char32_t, std::vector<Syllable>> table_;
};

class WordList {
 public:
  WordList() = default;
  WordList(std::string name, std::unordered_set<std::string> entries);

  const std::string& name() const noexcept { return name_; }
  bool contains(std::string_view word) const { return entries_.contains(std::string(word)); }
  std::size_t size() const noexcept { return entries_.size(); }
  const std::unordered_set<std::string>& entries() const noexcept { return entries_; }

  static WordList parse(std::istream& in, std::string name, std::string_view source = "<wordlist>");
  static WordList load(const std::string& path, std::string name);

  friend bool operator==(const WordList& a, const WordList& b) { return a.entries_ == b.entries_; }

 private:
  std::string name_;
  std::unordered_set<std::string> entries_;
};

class ScalarLexicon {
 public:
  ScalarLexicon() = default;

  const std::string& name() const noexcept { return name_; }
  std::optional<double> score(std::string_view word) const;
  double range_min() const noexcept { return range_min_; }
  double range_max() const noexcept { return range_max_; }
  double midpoint() const noexcept { return 0.5 * (range_min_ + range_max_); }
  std::size_t size() const noexcept { return scores_.size(); }

  // Rows are `word<TAB>score`. A `# range = LO HI` header fixes the score
  // range; otherwise the observed min/max is used.
  static ScalarLexicon parse(std::istream& in, std::string name, std::string_view source = "<scalar>");
  static ScalarLexicon load(const std::string& path, std::string name);

 private:
  std::string name_;
  std::unordered_map<std::string, double> scores_;
  double range_min_ = 0.0;
  double range_max_ = 0.0;
};

enum class UnitKind { Word, Pos };
std::string_view unit_kind_name(UnitKind k);

// U+241F SYMBOL FOR UNIT SEPARATOR, used to join n-gram units.
inline constexpr std::string_view kGramSeparator = "\xE2\x90\x9F";
std::string join_gram(std::span<const std::string> units);

class RefNgramTable {
 public:
  RefNgramTable() = default;

  // 0 when the gram is absent; smoothing is the consumer's business.
  std::int64_t count(UnitKind kind, int n, std::string_view joined_gram) const;
  std::int64_t count(UnitKind kind, std::span<const std::string> units) const;
  // Sum of the n = 1 counts for the kind.
  std::int64_t total(UnitKind kind) const;
  // Unigrams by count desc, then gram asc.
  const std::vector<std::string>& ranked_unigrams(UnitKind kind) const;
  std::size_t entries(UnitKind kind, int n) const;

  static RefNgramTable parse(std::istream& in, std::string_view source = "<reference>");
  static RefNgramTable load(const std::string& path);

 private:
  static std::size_t bucket(UnitKind kind, int n) { return static_cast<std::size_t>(kind) * 3 + (n - 1); }
  void finalize();

  std::array<std::unordered_map<std::string, std::int64_t>, 6> counts_;
  std::array<std::int64_t, 2> totals_{0, 0};
  std::array<std::vector<std::string>, 2> ranked_;
};

// Everything the feature extractors may consult. Absent members disable the
// features that need them.
struct LexiconBundle {
  std::optional<PinyinLexicon> pinyin;
  std::optional<ScalarLexicon> concreteness;
  std::optional<WordList> onomatopoeia;
  std::optional<WordList> strong_modifiers;
  std::optional<WordList> sentence_final_particles;
  std::optional<WordList> er_stoplist;
  std::optional<WordList> repetition_stoplist;
  std::optional<WordList> untranslatable;
  std::optional<WordList> idioms;
  std::optional<RefNgramTable> reference;
};

}  // namespace cttstylo
