#include "cttstylo/feat_ctt.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>

#include "cttstylo/error.hpp"
#include "cttstylo/text.hpp"

namespace cttstylo {

namespace {

constexpr double kPerMille = 1000.0;

double per_mille(std::size_t count, std::size_t tokens) {
  return tokens ? kPerMille * static_cast<double>(count) / static_cast<double>(tokens) : 0.0;
}

double ratio(std::size_t num, std::size_t den) {
  return den ? static_cast<double>(num) / static_cast<double>(den) : 0.0;
}

std::u32string sentence_chars(const Sentence& s) {
  std::u32string out;
  for (const auto& t : s.tokens) out += text::decode_utf8(t.surface);
  return out;
}

template <typename F>
void for_each_cjk_run(std::u32string_view chars, F&& f) {
  std::size_t i = 0;
  while (i < chars.size()) {
    if (!text::is_cjk(chars[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < chars.size() && text::is_cjk(chars[j])) ++j;
    f(chars.substr(i, j - i));
    i = j;
  }
}

}  // namespace

// --- repetition --------------------------------------------------------------

void RepetitionConfig::validate() const {
  if (!stoplist) return;
  for (const auto& e : stoplist->entries()) {
    const auto n = text::length(e);
    if (n < 2 || n > 4) throw Error("repetition stoplist entry '" + e + "' must be 2-4 characters");
  }
}

std::vector<RepetitionMatch> find_repetitions(std::u32string_view run, const RepetitionConfig& cfg) {
  std::vector<RepetitionMatch> matches;
  const std::size_t n = run.size();
  std::size_t i = 0;
  while (i < n) {
    std::optional<RepetitionPattern> pattern;
    std::size_t len = 0;
    if (i + 3 < n) {
      const char32_t a = run[i], b = run[i + 1], c = run[i + 2], d = run[i + 3];
      if (cfg.abab && a != b && a == c && b == d) {
        pattern = RepetitionPattern::ABAB;
        len = 4;
      } else if (cfg.aabb && a == b && c == d && a != c) {
        pattern = RepetitionPattern::AABB;
        len = 4;
      }
    }
    const bool triple = i + 2 < n && run[i] == run[i + 1] && run[i] == run[i + 2];
    if (!pattern && triple) {
      // A triple never counts as AA, even when AAA is switched off.
      len = 3;
      if (cfg.aaa) pattern = RepetitionPattern::AAA;
    }
    if (!pattern && len == 0 && cfg.aa && i + 1 < n && run[i] == run[i + 1]) {
      pattern = RepetitionPattern::AA;
      len = 2;
    }
    if (len == 0) {
      ++i;
      continue;
    }
    if (pattern) {
      std::u32string matched(run.substr(i, len));
      if (!cfg.stoplist || !cfg.stoplist->contains(text::encode_utf8(matched))) {
        matches.push_back({*pattern, i, std::move(matched)});
      }
    }
    i += len;
  }
  return matches;
}

RepetitionCounts count_repetitions(std::span<const Sentence> sample, const RepetitionConfig& cfg) {
  RepetitionCounts counts;
  for (const auto& s : sample) {
    const auto chars = sentence_chars(s);
    for_each_cjk_run(chars, [&](std::u32string_view run) {
      for (const auto& m : find_repetitions(run, cfg)) {
        switch (m.pattern) {
          case RepetitionPattern::AA: ++counts.aa; break;
          case RepetitionPattern::AAA: ++counts.aaa; break;
          case RepetitionPattern::ABAB: ++counts.abab; break;
          case RepetitionPattern::AABB: ++counts.aabb; break;
        }
      }
    });
  }
  return counts;
}

FeatureVector repetition_features(std::span<const Sentence> sample, const RepetitionConfig& cfg) {
  const auto c = count_repetitions(sample, cfg);
  const auto tokens = count_tokens(sample);
  FeatureVector fv;
  if (cfg.aa) fv.add("rep_AA", per_mille(c.aa, tokens));
  if (cfg.aaa) fv.add("rep_AAA", per_mille(c.aaa, tokens));
  if (cfg.abab) fv.add("rep_ABAB", per_mille(c.abab, tokens));
  if (cfg.aabb) fv.add("rep_AABB", per_mille(c.aabb, tokens));
  return fv;
}

// --- rhythm ------------------------------------------------------------------

bool is_open_final(std::string_view final) {
  if (final.empty()) return false;
  if (final.ends_with("\xC3\xBC")) return true;  // ü
  switch (final.back()) {
    case 'a': case 'e': case 'i': case 'o': case 'u': case 'v':
      return true;
    default:
      return false;
  }
}

FeatureVector rhythm_features(std::span<const Sentence> sample, const PinyinLexicon& pinyin) {
  std::size_t known = 0, open = 0;
  std::size_t inner_pairs = 0, inner_rhymes = 0;
  std::size_t tone_pairs = 0, tone_flips = 0;
  std::size_t sentence_pairs = 0, sentence_rhymes = 0;
  std::map<std::string, std::size_t> finals;
  std::optional<std::string> prev_sentence_final;

  auto level = [](int tone) { return tone == 1 || tone == 2; };

  for (const auto& s : sample) {
    std::vector<Syllable> syl;
    for (char32_t c : sentence_chars(s)) {
      if (!text::is_cjk(c)) continue;
      if (auto r = pinyin.lookup(c)) syl.push_back(std::move(*r));
    }
    for (std::size_t i = 0; i < syl.size(); ++i) {
      ++known;
      if (is_open_final(syl[i].final)) ++open;
      ++finals[syl[i].final];
      if (i == 0) continue;
      const auto& p = syl[i - 1];
      const auto& q = syl[i];
      ++inner_pairs;
      if (p.final == q.final) ++inner_rhymes;
      if (p.tone != 0 && q.tone != 0) {
        ++tone_pairs;
        if (level(p.tone) != level(q.tone)) ++tone_flips;
      }
    }
    if (syl.empty()) {
      prev_sentence_final.reset();
      continue;
    }
    if (prev_sentence_final) {
      ++sentence_pairs;
      if (*prev_sentence_final == syl.back().final) ++sentence_rhymes;
    }
    prev_sentence_final = syl.back().final;
  }

  FeatureVector fv;
  double balance = 0.0;
  if (finals.size() > 1) {
    double h = 0.0;
    for (const auto& [_, c] : finals) {
      const double p = static_cast<double>(c) / static_cast<double>(known);
      h -= p * std::log(p);
    }
    balance = h / std::log(static_cast<double>(finals.size()));
  }
  fv.add("rhy_open_syllable_ratio", ratio(open, known));
  fv.add("rhy_rhyme_ratio", ratio(sentence_rhymes, sentence_pairs));
  fv.add("rhy_rhyme_density", ratio(inner_rhymes, inner_pairs));
  fv.add("rhy_vowel_balance", balance);
  fv.add("rhy_tonal_alternation", ratio(tone_flips, tone_pairs));
  if (known == 0) fv.flags.push_back("no-syllables");
  return fv;
}

// --- translatability ---------------------------------------------------------

std::string sentence_text(const Sentence& s) {
  std::string out;
  char32_t prev_last = 0;
  for (const auto& t : s.tokens) {
    const auto cps = text::decode_utf8(t.surface);
    if (cps.empty()) continue;
    if (prev_last && text::is_latin_letter(prev_last) && text::is_latin_letter(cps.front())) out.push_back(' ');
    out += t.surface;
    prev_last = cps.back();
  }
  return out;
}

namespace {

bool is_latin_connector(char32_t c) { return c == U' ' || c == U'\'' || c == U'’' || c == U'-'; }

}  // namespace

std::vector<ScriptSpan> segment_scripts(std::u32string_view s) {
  std::vector<ScriptSpan> spans;
  auto push_other = [&](char32_t c) {
    if (spans.empty() || spans.back().kind != ScriptKind::OTHER) {
      spans.push_back({ScriptKind::OTHER, 0, 0, {}, true});
    }
    auto& sp = spans.back();
    sp.text.push_back(c);
    ++sp.char_count;
    sp.whitespace_only = sp.whitespace_only && text::is_space(c);
  };

  std::size_t i = 0;
  while (i < s.size()) {
    const char32_t c = s[i];
    if (text::is_cjk(c)) {
      std::size_t j = i;
      while (j < s.size() && text::is_cjk(s[j])) ++j;
      spans.push_back({ScriptKind::CJK, j - i, 0, std::u32string(s.substr(i, j - i)), false});
      i = j;
    } else if (text::is_latin_letter(c)) {
      // Extend through letters and connectors, then back off to the last letter.
      std::size_t j = i, last_letter = i;
      while (j < s.size() && (text::is_latin_letter(s[j]) || is_latin_connector(s[j]))) {
        if (text::is_latin_letter(s[j])) last_letter = j;
        ++j;
      }
      const std::size_t end = last_letter + 1;
      ScriptSpan sp{ScriptKind::LATIN, 0, 0, std::u32string(s.substr(i, end - i)), false};
      bool in_word = false;
      for (char32_t x : sp.text) {
        if (text::is_latin_letter(x)) ++sp.char_count;
        if (x == U' ') {
          in_word = false;
        } else if (!in_word) {
          in_word = true;
          ++sp.word_count;
        }
      }
      spans.push_back(std::move(sp));
      i = end;
    } else {
      push_other(c);
      ++i;
    }
  }
  return spans;
}

TranslatabilityCounts count_translatability(std::span<const Sentence> sample, const WordList* untranslatable) {
  TranslatabilityCounts c;
  for (const auto& s : sample) {
    c.tokens += s.size();
    if (untranslatable) {
      for (const auto& t : s.tokens) {
        if (untranslatable->contains(t.surface)) ++c.untranslatable;
      }
    }
    const auto spans = segment_scripts(text::decode_utf8(sentence_text(s)));
    ScriptKind prev = ScriptKind::OTHER;  // OTHER = no preceding script span
    for (const auto& sp : spans) {
      switch (sp.kind) {
        case ScriptKind::CJK:
          c.cjk_chars += sp.char_count;
          break;
        case ScriptKind::LATIN: {
          c.latin_chars += sp.char_count;
          if (sp.word_count >= 3) ++c.long_latin_runs;
          std::size_t word_start = 0;
          const auto& t = sp.text;
          for (std::size_t k = 0; k <= t.size(); ++k) {
            if (k == t.size() || t[k] == U' ') {
              const std::size_t len = k - word_start;
              if (len >= 2 && len <= 5 &&
                  std::all_of(t.begin() + static_cast<std::ptrdiff_t>(word_start),
                              t.begin() + static_cast<std::ptrdiff_t>(k), text::is_ascii_upper)) {
                ++c.abbreviations;
              }
              word_start = k + 1;
            }
          }
          break;
        }
        case ScriptKind::OTHER:
          if (!sp.whitespace_only) prev = ScriptKind::OTHER;
          continue;
      }
      if (prev != ScriptKind::OTHER && prev != sp.kind) ++c.switches;
      prev = sp.kind;
    }
  }
  return c;
}

FeatureVector translatability_features(std::span<const Sentence> sample, const WordList* untranslatable) {
  const auto c = count_translatability(sample, untranslatable);
  FeatureVector fv;
  fv.add("trans_completeness", per_mille(c.long_latin_runs, c.tokens));
  fv.add("trans_foreignness", ratio(c.latin_chars, c.latin_chars + c.cjk_chars));
  fv.add("trans_code_switching", per_mille(c.switches, c.tokens));
  fv.add("trans_abbreviation", per_mille(c.abbreviations, c.tokens));
  fv.add("trans_untranslatable", per_mille(c.untranslatable, c.tokens));
  return fv;
}

// --- miscellaneous -----------------------------------------------------------

MiscCounts count_misc(std::span<const Sentence> sample, const MiscLexicons& lex) {
  MiscCounts c;
  for (const auto& s : sample) {
    ++c.sentences;
    std::optional<char32_t> last_cjk;
    for (const auto& t : s.tokens) {
      ++c.tokens;
      if (lex.onomatopoeia && lex.onomatopoeia->contains(t.surface)) ++c.onomatopoeia;
      if (lex.strong_modifiers && lex.strong_modifiers->contains(t.surface)) ++c.strong_modifiers;
      const auto cps = text::decode_utf8(t.surface);
      if (cps.size() >= 2 && cps.back() == U'儿' && !(lex.er_stoplist && lex.er_stoplist->contains(t.surface))) {
        ++c.er_suffix;
      }
      for (char32_t ch : cps) {
        if (text::is_cjk(ch)) last_cjk = ch;
        if (ch == U'“' || ch == U'「' || ch == U'『' || ch == U'"' || ch == U'\'') ++c.quotes;
      }
    }
    if (last_cjk && lex.sentence_final_particles &&
        lex.sentence_final_particles->contains(text::encode_utf8(*last_cjk))) {
      ++c.particle_final;
    }
  }
  return c;
}

FeatureVector misc_features(std::span<const Sentence> sample, const MiscLexicons& lex) {
  const auto c = count_misc(sample, lex);
  FeatureVector fv;
  fv.add("misc_ratio_onomatopoeia", per_mille(c.onomatopoeia, c.tokens));
  fv.add("misc_ratio_er_suffix", per_mille(c.er_suffix, c.tokens));
  fv.add("misc_ratio_SentFinalParticle", ratio(c.particle_final, c.sentences));
  fv.add("misc_ratio_StrSentMdfyr", per_mille(c.strong_modifiers, c.tokens));
  fv.add("misc_ratio_quote", ratio(c.quotes, c.sentences));
  return fv;
}

}  // namespace cttstylo
