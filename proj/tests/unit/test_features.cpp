#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "cttstylo/features.hpp"
#include "helpers.hpp"
#include "synthetic.hpp"

using namespace cttstylo;
using cttstylo::testing::data_path;

namespace {

LexiconBundle fixture_lexicons() {
  LexiconBundle lex;
  lex.pinyin = PinyinLexicon::load(data_path("pinyin.tsv").string());
  lex.concreteness = ScalarLexicon::load(data_path("concreteness.tsv").string(), "concreteness");
  lex.onomatopoeia = WordList::load(data_path("onomatopoeia.txt").string(), "onomatopoeia");
  lex.strong_modifiers = WordList::load(data_path("strong_modifiers.txt").string(), "strong_modifiers");
  lex.sentence_final_particles = WordList::load(data_path("particles.txt").string(), "particles");
  lex.untranslatable = WordList::load(data_path("untranslatable.txt").string(), "untranslatable");
  lex.reference = RefNgramTable::load(data_path("reference.tsv").string());
  return lex;
}

std::vector<Chunk> whole_documents(const std::vector<Document>& docs) {
  std::vector<Chunk> out;
  for (const auto& d : docs) {
    for (auto& c : chunk_document(d, ChunkParams{1000000, 1})) out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

TEST(Families, PrefixesMapToFamilies) {
  EXPECT_EQ(family_of("lex_ttr"), Family::Lexical);
  EXPECT_EQ(family_of("syn_mdd"), Family::Syntactic);
  EXPECT_EQ(family_of("rdprx_log_ref_freq"), Family::Readability);
  EXPECT_EQ(family_of("conc_mean"), Family::Readability);
  EXPECT_EQ(family_of("pos_2gram_v_n"), Family::Ngram);
  EXPECT_EQ(family_of("rep_AA"), Family::Repetition);
  EXPECT_EQ(family_of("rhy_vowel_balance"), Family::Rhythm);
  EXPECT_EQ(family_of("trans_foreignness"), Family::Translatability);
  EXPECT_EQ(family_of("misc_ratio_quote"), Family::Misc);
  EXPECT_FALSE(family_of("bogus").has_value());
  EXPECT_EQ(provenance_of("rdprx_x"), "proxy");
  EXPECT_EQ(provenance_of("lex_ttr"), "measured");
  for (auto f : kAllFamilies) EXPECT_EQ(parse_family(family_name(f)), f);
  EXPECT_TRUE(is_generic(Family::Ngram));
  EXPECT_FALSE(is_generic(Family::Repetition));
}

TEST(Extraction, GoldenFixtureValues) {
  const auto docs = load_corpus_file(data_path("golden.txt").string());
  const auto samples = whole_documents(docs);
  const auto lex = fixture_lexicons();
  const auto r = extract_features(samples, lex, ExtractionConfig{});
  const auto& m = r.matrix;
  ASSERT_EQ(m.values.rows(), 1u);
  auto at = [&](const char* n) {
    const auto i = m.feature_index(n);
    EXPECT_NE(i, npos) << n;
    return i == npos ? std::nan("") : m.values(0, i);
  };
  EXPECT_DOUBLE_EQ(at("rep_AA"), 2000.0 / 139.0);
  EXPECT_DOUBLE_EQ(at("rep_ABAB"), 1000.0 / 139.0);
  EXPECT_DOUBLE_EQ(at("misc_ratio_quote"), 0.15);
  EXPECT_DOUBLE_EQ(at("misc_ratio_SentFinalParticle"), 0.1);
  EXPECT_DOUBLE_EQ(at("trans_completeness"), 1000.0 / 139.0);
  EXPECT_DOUBLE_EQ(at("trans_abbreviation"), 1000.0 / 139.0);
  for (double v : m.values.data()) {
    EXPECT_TRUE(std::isfinite(v));
    EXPECT_GE(v, 0.0);
  }
}

TEST(Extraction, DisabledFamiliesLeaveNoColumns) {
  const auto docs = load_corpus_file(data_path("mini_corpus.txt").string());
  const auto samples = whole_documents(docs);
  const auto lex = fixture_lexicons();
  ExtractionConfig cfg;
  cfg.set(Family::Rhythm, false);
  cfg.set(Family::Ngram, false);
  const auto m = extract_features(samples, lex, cfg).matrix;
  EXPECT_EQ(m.values.rows(), 3u);
  for (const auto& f : m.features) {
    EXPECT_NE(family_of(f), Family::Rhythm) << f;
    EXPECT_NE(family_of(f), Family::Ngram) << f;
  }
}

TEST(Extraction, MissingResourcesReported) {
  ExtractionConfig cfg;
  const auto missing = missing_resources(cfg, LexiconBundle{});
  EXPECT_FALSE(missing.empty());
  cfg = ExtractionConfig{};
  for (auto f : kAllFamilies) cfg.set(f, false);
  cfg.set(Family::Lexical, true);
  cfg.set(Family::Syntactic, true);
  cfg.set(Family::Repetition, true);
  cfg.set(Family::Translatability, true);
  EXPECT_TRUE(missing_resources(cfg, LexiconBundle{}).empty());
}

TEST(Extraction, CsvRoundTripWithSidecar) {
  const auto spec = [] {
    auto s = cttstylo::testing::three_group_spec(5);
    s.docs_per_group = 2;
    s.sentences_per_doc = 40;
    return s;
  }();
  const auto docs = cttstylo::testing::synthetic_corpus(spec);
  std::vector<Chunk> samples;
  for (const auto& d : docs) {
    for (auto& c : chunk_document(d, ChunkParams{300, 150})) samples.push_back(std::move(c));
  }
  const auto lex = fixture_lexicons();
  ExtractionConfig cfg;
  cfg.set(Family::Rhythm, false);
  cfg.set(Family::Readability, false);
  const auto r = extract_features(samples, lex, cfg);
  std::ostringstream out;
  write_matrix_csv(out, r.matrix);
  const auto meta = matrix_metadata(r);
  std::istringstream in(out.str());
  const auto back = read_matrix_csv(in, &meta);
  EXPECT_EQ(back.features, r.matrix.features);
  ASSERT_EQ(back.samples.size(), r.matrix.samples.size());
  for (std::size_t i = 0; i < back.samples.size(); ++i) {
    EXPECT_EQ(back.samples[i].id, r.matrix.samples[i].id);
    EXPECT_EQ(back.samples[i].document, r.matrix.samples[i].document);
    EXPECT_EQ(back.samples[i].engine, r.matrix.samples[i].engine);
    EXPECT_EQ(back.samples[i].group, r.matrix.samples[i].group);
  }
  for (std::size_t i = 0; i < back.values.data().size(); ++i) {
    EXPECT_DOUBLE_EQ(back.values.data()[i], r.matrix.values.data()[i]);
  }
  std::istringstream again(out.str());
  const auto derived = read_matrix_csv(again);
  EXPECT_EQ(derived.samples.front().document, samples.front().parent_doc);
}

TEST(Extraction, DeterministicAcrossRuns) {
  const auto docs = load_corpus_file(data_path("mini_corpus.txt").string());
  const auto samples = whole_documents(docs);
  const auto lex = fixture_lexicons();
  const auto a = extract_features(samples, lex, ExtractionConfig{});
  const auto b = extract_features(samples, lex, ExtractionConfig{});
  EXPECT_EQ(a.matrix.features, b.matrix.features);
  EXPECT_EQ(a.matrix.values, b.matrix.values);
}
