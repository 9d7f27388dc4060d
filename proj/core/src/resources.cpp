#include "cttstylo/resources.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>

#include "cttstylo/error.hpp"
#include "cttstylo/text.hpp"

namespace cttstylo {

namespace {

std::ifstream open_or_throw(const std::string& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw Error(std::string("cannot open ") + what + " '" + path + "'");
  return in;
}

bool skip_line(std::string_view line) {
  const auto t = text::trim(line);
  return t.empty() || t.front() == '#';
}

std::optional<double> parse_finite(std::string_view s) {
  s = text::trim(s);
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------

std::optional<Syllable> PinyinLexicon::lookup(char32_t ch) const {
  const auto it = table_.find(ch);
  if (it == table_.end() || it->second.empty()) return std::nullopt;
  return it->second.front();
}

std::span<const Syllable> PinyinLexicon::readings(char32_t ch) const {
  const auto it = table_.find(ch);
  if (it == table_.end()) return {};
  return it->second;
}

PinyinLexicon PinyinLexicon::parse(std::istream& in, std::string_view source) {
  PinyinLexicon lex;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = text::chomp(raw);
    if (skip_line(line)) continue;
    const auto cols = text::split(line, '\t');
    if (cols.size() != 4) {
      throw ParseError(std::string(source), line_no, "expected char<TAB>initial<TAB>final<TAB>tone");
    }
    const auto chars = text::decode_utf8(text::trim(cols[0]));
    if (chars.size() != 1) throw ParseError(std::string(source), line_no, "first column must be one character");
    Syllable syl;
    syl.initial = std::string(text::trim(cols[1]));
    syl.final = std::string(text::trim(cols[2]));
    if (syl.final.empty()) throw ParseError(std::string(source), line_no, "empty final");
    const auto tone_field = text::trim(cols[3]);
    int tone = -1;
    const auto res = std::from_chars(tone_field.data(), tone_field.data() + tone_field.size(), tone);
    if (res.ec != std::errc{} || res.ptr != tone_field.data() + tone_field.size() || tone < 0 || tone > 4) {
      throw ParseError(std::string(source), line_no, "bad tone value '" + std::string(tone_field) + "'");
    }
    syl.tone = tone;
    auto& readings = lex.table_[chars.front()];
    if (std::find(readings.begin(), readings.end(), syl) == readings.end()) readings.push_back(std::move(syl));
  }
  return lex;
}

PinyinLexicon PinyinLexicon::load(const std::string& path) {
  auto in = open_or_throw(path, "pinyin lexicon");
  return parse(in, path);
}

// ---------------------------------------------------------------------------

WordList::WordList(std::string name, std::unordered_set<std::string> entries)
    : name_(std::move(name)), entries_(std::move(entries)) {
  if (entries_.empty()) throw Error("empty lexicon '" + name_ + "'");
}

WordList WordList::parse(std::istream& in, std::string name, std::string_view source) {
  std::unordered_set<std::string> entries;
  std::string raw;
  while (std::getline(in, raw)) {
    const std::string_view line = text::chomp(raw);
    if (skip_line(line)) continue;
    entries.emplace(text::trim(line));
  }
  if (entries.empty()) throw Error(std::string(source) + ": empty lexicon");
  return WordList(std::move(name), std::move(entries));
}

WordList WordList::load(const std::string& path, std::string name) {
  auto in = open_or_throw(path, "word list");
  return parse(in, std::move(name), path);
}

// ---------------------------------------------------------------------------

std::optional<double> ScalarLexicon::score(std::string_view word) const {
  const auto it = scores_.find(std::string(word));
  if (it == scores_.end()) return std::nullopt;
  return it->second;
}

ScalarLexicon ScalarLexicon::parse(std::istream& in, std::string name, std::string_view source) {
  ScalarLexicon lex;
  lex.name_ = std::move(name);
  std::optional<std::pair<double, double>> declared;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = text::chomp(raw);
    const auto t = text::trim(line);
    if (t.empty()) continue;
    if (t.front() == '#') {
      const auto eq = t.find('=');
      if (eq != std::string_view::npos && text::trim(t.substr(1, eq - 1)) == "range") {
        const auto parts = text::split_list(t.substr(eq + 1));
        std::optional<double> lo, hi;
        if (parts.size() == 2) {
          lo = parse_finite(parts[0]);
          hi = parse_finite(parts[1]);
        }
        if (!lo || !hi || *lo > *hi) throw ParseError(std::string(source), line_no, "bad range header");
        declared = {*lo, *hi};
      }
      continue;
    }
    const auto cols = text::split(line, '\t');
    if (cols.size() != 2) throw ParseError(std::string(source), line_no, "expected word<TAB>score");
    const auto value = parse_finite(cols[1]);
    if (!value) throw ParseError(std::string(source), line_no, "score is not a finite number: '" + std::string(cols[1]) + "'");
    const std::string word(text::trim(cols[0]));
    if (word.empty()) throw ParseError(std::string(source), line_no, "empty word");
    if (!lex.scores_.emplace(word, *value).second) {
      throw ParseError(std::string(source), line_no, "duplicate entry '" + word + "'");
    }
  }
  if (lex.scores_.empty()) throw Error(std::string(source) + ": empty lexicon");
  if (declared) {
    lex.range_min_ = declared->first;
    lex.range_max_ = declared->second;
  } else {
    const auto [lo, hi] = std::minmax_element(lex.scores_.begin(), lex.scores_.end(),
                                              [](const auto& a, const auto& b) { return a.second < b.second; });
    lex.range_min_ = lo->second;
    lex.range_max_ = hi->second;
  }
  return lex;
}

ScalarLexicon ScalarLexicon::load(const std::string& path, std::string name) {
  auto in = open_or_throw(path, "scalar lexicon");
  return parse(in, std::move(name), path);
}

// ---------------------------------------------------------------------------

std::string_view unit_kind_name(UnitKind k) { return k == UnitKind::Word ? "word" : "pos"; }

std::string join_gram(std::span<const std::string> units) {
  std::string out;
  for (std::size_t i = 0; i < units.size(); ++i) {
    if (i) out += kGramSeparator;
    out += units[i];
  }
  return out;
}

std::int64_t RefNgramTable::count(UnitKind kind, int n, std::string_view joined_gram) const {
  if (n < 1 || n > 3) return 0;
  const auto& m = counts_[bucket(kind, n)];
  const auto it = m.find(std::string(joined_gram));
  return it == m.end() ? 0 : it->second;
}

std::int64_t RefNgramTable::count(UnitKind kind, std::span<const std::string> units) const {
  return count(kind, static_cast<int>(units.size()), join_gram(units));
}

std::int64_t RefNgramTable::total(UnitKind kind) const { return totals_[static_cast<std::size_t>(kind)]; }

const std::vector<std::string>& RefNgramTable::ranked_unigrams(UnitKind kind) const {
  return ranked_[static_cast<std::size_t>(kind)];
}

std::size_t RefNgramTable::entries(UnitKind kind, int n) const {
  if (n < 1 || n > 3) return 0;
  return counts_[bucket(kind, n)].size();
}

void RefNgramTable::finalize() {
  for (std::size_t k = 0; k < 2; ++k) {
    const auto& uni = counts_[k * 3];
    std::int64_t total = 0;
    std::vector<std::pair<std::string, std::int64_t>> items(uni.begin(), uni.end());
    for (const auto& [_, c] : items) total += c;
    totals_[k] = total;
    std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
      return a.second != b.second ? a.second > b.second : a.first < b.first;
    });
    ranked_[k].clear();
    for (auto& [g, _] : items) ranked_[k].push_back(std::move(g));
  }
}

RefNgramTable RefNgramTable::parse(std::istream& in, std::string_view source) {
  RefNgramTable table;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = text::chomp(raw);
    if (skip_line(line)) continue;
    const auto cols = text::split(line, '\t');
    if (cols.size() != 4) throw ParseError(std::string(source), line_no, "expected kind<TAB>n<TAB>gram<TAB>count");
    const auto kind_s = text::trim(cols[0]);
    UnitKind kind;
    if (kind_s == "word") {
      kind = UnitKind::Word;
    } else if (kind_s == "pos") {
      kind = UnitKind::Pos;
    } else {
      throw ParseError(std::string(source), line_no, "unknown unit kind '" + std::string(kind_s) + "'");
    }
    const auto n_s = text::trim(cols[1]);
    int n = 0;
    auto res = std::from_chars(n_s.data(), n_s.data() + n_s.size(), n);
    if (res.ec != std::errc{} || res.ptr != n_s.data() + n_s.size() || n < 1 || n > 3) {
      throw ParseError(std::string(source), line_no, "n must be 1, 2 or 3");
    }
    const std::string gram(text::trim(cols[2]));
    std::size_t units = 1;
    for (std::size_t p = gram.find(kGramSeparator); p != std::string::npos; p = gram.find(kGramSeparator, p + 1)) ++units;
    if (gram.empty() || units != static_cast<std::size_t>(n)) {
      throw ParseError(std::string(source), line_no, "gram does not have " + std::to_string(n) + " units");
    }
    const auto c_s = text::trim(cols[3]);
    std::int64_t c = 0;
    res = std::from_chars(c_s.data(), c_s.data() + c_s.size(), c);
    if (res.ec != std::errc{} || res.ptr != c_s.data() + c_s.size() || c < 1) {
      throw ParseError(std::string(source), line_no, "count must be an integer >= 1");
    }
    table.counts_[bucket(kind, n)][gram] += c;
  }
  table.finalize();
  return table;
}

RefNgramTable RefNgramTable::load(const std::string& path) {
  auto in = open_or_throw(path, "reference table");
  return parse(in, path);
}

}  // namespace cttstylo
