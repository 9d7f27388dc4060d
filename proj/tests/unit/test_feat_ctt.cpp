#include <gtest/gtest.h>

#include <sstream>

#include "cttstylo/feat_ctt.hpp"
#include "cttstylo/text.hpp"
#include "helpers.hpp"

using namespace cttstylo;
using cttstylo::testing::data_path;
using cttstylo::testing::words;

namespace {

// One sentence with one token per whitespace-separated word.
Sentence tokens(const std::string& spaced) {
  Sentence s;
  std::istringstream in(spaced);
  std::string w;
  int i = 0;
  while (in >> w) s.tokens.push_back({++i, w, "x", i == 1 ? 0 : 1, i == 1 ? "HED" : "ATT"});
  return s;
}

RepetitionCounts reps(const std::string& text, const WordList* stop = nullptr) {
  RepetitionConfig cfg;
  cfg.stoplist = stop;
  const std::vector<Sentence> s{tokens(text)};
  return count_repetitions(s, cfg);
}

PinyinLexicon pinyin(const std::string& rows) {
  std::istringstream in(rows);
  return PinyinLexicon::parse(in);
}

}  // namespace

TEST(Repetition, PaperExamples) {
  EXPECT_EQ(reps("热热的").aa, 1u);
  const auto stop = words("stop", {"妈妈"});
  EXPECT_EQ(reps("妈妈 来了", &stop).aa, 0u);
  EXPECT_EQ(reps("很久很久").abab, 1u);
  const auto triple = reps("慢慢慢");
  EXPECT_EQ(triple.aaa, 1u);
  EXPECT_EQ(triple.aa, 0u);
  EXPECT_EQ(reps("高高兴兴").aabb, 1u);
}

TEST(Repetition, NonOverlappingAndBoundedByStream) {
  const std::u32string run = U"天天天天天好好好看看";
  const auto m = find_repetitions(run, RepetitionConfig{});
  std::size_t covered = 0, prev_end = 0;
  for (const auto& x : m) {
    EXPECT_GE(x.offset, prev_end);
    prev_end = x.offset + x.text.size();
    covered += x.text.size();
  }
  EXPECT_LE(covered, run.size());
  EXPECT_EQ(find_repetitions(run, RepetitionConfig{}).size(), m.size());
}

TEST(Repetition, LatinBreaksTheStream) {
  EXPECT_EQ(reps("好 OK 好").aa, 0u);
}

TEST(Repetition, StoplistEntryLengthChecked) {
  const auto bad = words("stop", {"妈"});
  RepetitionConfig cfg;
  cfg.stoplist = &bad;
  EXPECT_THROW(cfg.validate(), std::exception);
}

TEST(Rhythm, HandCases) {
  const auto lex = pinyin("妈\tm\ta\t1\n们\tm\ten\t0\n天\tt\tian\t1\n");
  const std::vector<Sentence> mamamen{tokens("妈妈们")};
  EXPECT_NEAR(*rhythm_features(mamamen, lex).get("rhy_open_syllable_ratio"), 2.0 / 3.0, 1e-12);
  const std::vector<Sentence> tiantian{tokens("天天")};
  const auto fv = rhythm_features(tiantian, lex);
  EXPECT_EQ(*fv.get("rhy_tonal_alternation"), 0.0);
  EXPECT_EQ(*fv.get("rhy_vowel_balance"), 0.0);
  const std::vector<Sentence> unknown{tokens("猫")};
  EXPECT_TRUE(rhythm_features(unknown, lex).has_flag("no-syllables"));
}

TEST(Translatability, TinkSentence) {
  const std::vector<Sentence> s{tokens("Tink 确实 又 开始 四处 乱窜")};
  const auto c = count_translatability(s, nullptr);
  EXPECT_EQ(c.latin_chars, 4u);
  EXPECT_EQ(c.cjk_chars, 9u);
  EXPECT_EQ(c.switches, 1u);
  EXPECT_NEAR(*translatability_features(s).get("trans_foreignness"), 4.0 / 13.0, 1e-12);
}

TEST(Translatability, ShortLatinRunIsNotIncomplete) {
  const std::vector<Sentence> s{tokens("他们 perfectly safe ， 不是 吗 ？")};
  const auto c = count_translatability(s, nullptr);
  EXPECT_EQ(c.long_latin_runs, 0u);
  EXPECT_EQ(text::encode_utf8(segment_scripts(text::decode_utf8(sentence_text(s[0])))[1].text), "perfectly safe");
}

TEST(Translatability, PureScripts) {
  const std::vector<Sentence> zh{tokens("我 爱 你")}, en{tokens("I love you")};
  EXPECT_EQ(*translatability_features(zh).get("trans_foreignness"), 0.0);
  EXPECT_EQ(*translatability_features(zh).get("trans_code_switching"), 0.0);
  EXPECT_EQ(*translatability_features(en).get("trans_foreignness"), 1.0);
}

TEST(Translatability, RemovingLatinZeroesFeatures) {
  const std::vector<Sentence> mixed{tokens("他 说 OK 就 走 了"), tokens("Peter and Wendy 来 了")};
  std::vector<Sentence> stripped;
  for (const auto& s : mixed) {
    Sentence t;
    for (const auto& tok : s.tokens) {
      const auto cps = text::decode_utf8(tok.surface);
      if (!text::is_latin_letter(cps.front())) t.tokens.push_back(tok);
    }
    stripped.push_back(t);
  }
  const auto fv = translatability_features(stripped);
  for (const char* n : {"trans_completeness", "trans_code_switching", "trans_abbreviation", "trans_foreignness"}) {
    EXPECT_EQ(*fv.get(n), 0.0) << n;
  }
  EXPECT_GT(*translatability_features(mixed).get("trans_completeness"), 0.0);
}

TEST(Misc, HandCases) {
  const auto stop = words("er", {"儿子"});
  MiscLexicons lex;
  lex.er_stoplist = &stop;
  const std::vector<Sentence> hua{tokens("花儿")}, erzi{tokens("儿子")};
  EXPECT_EQ(count_misc(hua, lex).er_suffix, 1u);
  EXPECT_EQ(count_misc(erzi, lex).er_suffix, 0u);
  const std::vector<Sentence> q{tokens("“ 你好 。 ”")};
  EXPECT_DOUBLE_EQ(*misc_features(q, lex).get("misc_ratio_quote"), 1.0);
}

TEST(Misc, ErSuffixIgnoresSentenceOrder) {
  MiscLexicons lex;
  std::vector<Sentence> s{tokens("花儿 开 了"), tokens("一会儿"), tokens("小孩 哭")};
  const auto a = count_misc(s, lex).er_suffix;
  std::reverse(s.begin(), s.end());
  EXPECT_EQ(count_misc(s, lex).er_suffix, a);
}

// The bundled 20-sentence fixture, counted by hand.
TEST(Golden, HandCounts) {
  const auto docs = load_corpus_file(data_path("golden.txt").string());
  ASSERT_EQ(docs.size(), 1u);
  const auto& s = docs[0].sentences;
  ASSERT_EQ(s.size(), 20u);
  ASSERT_EQ(docs[0].token_count(), 139u);

  const auto r = count_repetitions(s, RepetitionConfig{});
  EXPECT_EQ(r.aa, 2u);
  EXPECT_EQ(r.abab, 1u);
  EXPECT_EQ(r.aaa, 0u);
  EXPECT_EQ(r.aabb, 0u);

  const auto ono = WordList::load(data_path("onomatopoeia.txt").string(), "o");
  const auto strong = WordList::load(data_path("strong_modifiers.txt").string(), "s");
  const auto part = WordList::load(data_path("particles.txt").string(), "p");
  MiscLexicons lex{&ono, &strong, &part, nullptr};
  const auto m = count_misc(s, lex);
  EXPECT_EQ(m.er_suffix, 3u);
  EXPECT_EQ(m.quotes, 3u);
  EXPECT_EQ(m.particle_final, 2u);
  EXPECT_EQ(m.strong_modifiers, 3u);
  EXPECT_EQ(m.onomatopoeia, 1u);
  const auto mf = misc_features(s, lex);
  EXPECT_DOUBLE_EQ(*mf.get("misc_ratio_quote"), 3.0 / 20.0);
  EXPECT_DOUBLE_EQ(*mf.get("misc_ratio_er_suffix"), 3000.0 / 139.0);

  const auto untr = WordList::load(data_path("untranslatable.txt").string(), "u");
  const auto t = count_translatability(s, &untr);
  EXPECT_EQ(t.long_latin_runs, 1u);
  EXPECT_EQ(t.abbreviations, 1u);
  EXPECT_EQ(t.untranslatable, 1u);
  EXPECT_EQ(t.switches, 5u);
  EXPECT_EQ(t.latin_chars, 24u);

  const std::vector<Sentence> tink{s[3]};
  EXPECT_NEAR(*translatability_features(tink).get("trans_foreignness"), 4.0 / 13.0, 1e-12);
}
