#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "cttstylo/feat_generic.hpp"
#include "cttstylo/rng.hpp"
#include "helpers.hpp"
#include "synthetic.hpp"

using namespace cttstylo;
using cttstylo::testing::parse_one;

namespace {

std::vector<std::string> toks(std::initializer_list<const char*> l) { return {l.begin(), l.end()}; }

// Direct transcription of the factor-counting procedure, kept separate from
// the library version.
double mtld_oracle_pass(const std::vector<std::string>& t, double thr) {
  double factors = 0;
  std::set<std::string> types;
  std::size_t count = 0;
  for (const auto& w : t) {
    types.insert(w);
    ++count;
    const double ttr = double(types.size()) / double(count);
    if (ttr <= thr) {
      factors += 1;
      types.clear();
      count = 0;
    }
  }
  if (count > 0) {
    const double ttr = double(types.size()) / double(count);
    factors += (1 - ttr) / (1 - thr);
  }
  return factors == 0 ? double(t.size()) : double(t.size()) / factors;
}

double mtld_oracle(std::vector<std::string> t, double thr = 0.72) {
  const double f = mtld_oracle_pass(t, thr);
  std::reverse(t.begin(), t.end());
  return (f + mtld_oracle_pass(t, thr)) / 2;
}

Sentence sentence_with_heads(const std::vector<int>& heads) {
  Sentence s;
  for (std::size_t i = 0; i < heads.size(); ++i) {
    s.tokens.push_back({int(i) + 1, "字", "n", heads[i], heads[i] == 0 ? "HED" : "ATT"});
  }
  return s;
}

RefNgramTable ref_from(const std::string& text) {
  std::istringstream in(text);
  return RefNgramTable::parse(in);
}

}  // namespace

TEST(Diversity, TtrAndSttr) {
  EXPECT_NEAR(compute_ttr(toks({"我", "爱", "我"})), 2.0 / 3.0, 1e-12);
  EXPECT_DOUBLE_EQ(compute_ttr(toks({"a", "b", "c"})), 1.0);
  EXPECT_DOUBLE_EQ(compute_sttr(toks({"a", "b", "a", "b"}), 2), 1.0);
  EXPECT_DOUBLE_EQ(compute_sttr(toks({"a", "a", "b"}), 10), compute_ttr(toks({"a", "a", "b"})));
  EXPECT_THROW(compute_ttr({}), std::exception);
}

TEST(Diversity, MtldHandCases) {
  EXPECT_DOUBLE_EQ(compute_mtld(toks({"a", "a", "a", "a"})), 2.0);
  EXPECT_DOUBLE_EQ(compute_mtld(toks({"a", "b", "c", "d", "e"})), 5.0);
}

TEST(Diversity, MtldMatchesOracle) {
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.index(300), vocab = 1 + rng.index(40);
    std::vector<std::string> t;
    for (std::size_t i = 0; i < n; ++i) t.push_back("w" + std::to_string(rng.index(vocab)));
    EXPECT_NEAR(compute_mtld(t), mtld_oracle(t), 1e-9) << "trial " << trial;
  }
}

TEST(Diversity, MtldLowerForRepeatedText) {
  std::vector<std::string> repeated, distinct;
  for (int i = 0; i < 200; ++i) {
    repeated.push_back("w" + std::to_string(i % 5));
    distinct.push_back("w" + std::to_string(i));
  }
  EXPECT_LT(compute_mtld(repeated), compute_mtld(distinct));
}

TEST(PosRatios, ConjunctionAndPartition) {
  std::string body;
  const char* tags[] = {"c", "n", "c", "v", "c", "n", "n", "v", "n", "v"};
  for (int i = 0; i < 10; ++i) {
    body += std::to_string(i + 1) + "\t字\t" + tags[i] + "\t" + (i == 3 ? "0" : "4") + "\t" + (i == 3 ? "HED" : "ATT") + "\n";
  }
  const auto d = parse_one(body);
  const TagConfig tc;
  const auto fv = pos_ratio_features(d.sentences, tc);
  EXPECT_NEAR(*fv.get("lex_ratio_conjunction"), 0.3, 1e-12);
  EXPECT_EQ(*fv.get("lex_ratio_adverb"), 0.0);
  double sum = *fv.get("lex_pos_OTHER");
  for (const auto& t : tc.tagset) sum += *fv.get("lex_pos_" + t);
  EXPECT_NEAR(sum, 1.0, 1e-9);
}

TEST(Syntax, MddAndChildren) {
  const std::vector<Sentence> a{sentence_with_heads({2, 0, 2, 3})};
  EXPECT_DOUBLE_EQ(mean_dependency_distance(a), 1.0);
  const std::vector<Sentence> b{sentence_with_heads({3, 3, 0})};
  EXPECT_DOUBLE_EQ(mean_dependency_distance(b), 1.5);
  const std::vector<Sentence> chain{sentence_with_heads({2, 3, 0})};
  EXPECT_DOUBLE_EQ(avg_children_per_node(chain), 1.0);
  const std::vector<Sentence> single{sentence_with_heads({0})};
  const auto fv = syntactic_features(single);
  EXPECT_TRUE(fv.has_flag("no-deps"));
  EXPECT_EQ(*fv.get("syn_mdd"), 0.0);
}

TEST(Syntax, MddIgnoresRelationLabels) {
  auto s = sentence_with_heads({2, 0, 2, 2, 4});
  const std::vector<Sentence> before{s};
  for (auto& t : s.tokens) t.deprel = "X" + t.deprel;
  const std::vector<Sentence> after{s};
  EXPECT_EQ(mean_dependency_distance(before), mean_dependency_distance(after));
}

TEST(Syntax, QuestionRatio) {
  const auto d = parse_one("1\t好\ta\t0\tHED\n2\t吗\tu\t1\tRAD\n3\t？\twp\t1\tWP\n\n1\t好\ta\t0\tHED\n2\t。\twp\t1\tWP\n");
  EXPECT_DOUBLE_EQ(*syntactic_features(d.sentences).get("syn_question_ratio"), 0.5);
}

TEST(Readability, Proxies) {
  const auto ref = ref_from("word\t1\t我\t10\nword\t1\t爱\t5\nword\t1\t你\t3\n");
  const auto d = parse_one("1\t我\tr\t2\tSBV\n2\t爱\tv\t0\tHED\n3\t你\tr\t2\tVOB\n");
  const auto fv = readability_features(d.sentences, ref, TagConfig{});
  EXPECT_DOUBLE_EQ(*fv.get("rdprx_word_length"), 1.0);
  EXPECT_DOUBLE_EQ(*fv.get("rdprx_lexical_richness"), 0.0);
  EXPECT_DOUBLE_EQ(*fv.get("rdprx_sentence_length_sd"), 0.0);
  EXPECT_NEAR(*fv.get("rdprx_log_ref_freq"), (std::log1p(10) + std::log1p(5) + std::log1p(3)) / 3, 1e-12);
  const auto two = parse_one("1\t我\tr\t0\tHED\n\n1\t你\tr\t0\tHED\n");
  EXPECT_DOUBLE_EQ(*readability_features(two.sentences, ref, TagConfig{}).get("rdprx_sentence_length_sd"), 0.0);
}

TEST(Concreteness, MeanSdAndCoverage) {
  std::istringstream in("# range = 1 5\n书\t4\n想\t2\n");
  const auto lex = ScalarLexicon::parse(in, "c");
  const auto d = parse_one("1\t书\tn\t2\tSBV\n2\t想\tv\t0\tHED\n3\t了\tu\t2\tRAD\n");
  const auto fv = concreteness_features(d.sentences, lex);
  EXPECT_DOUBLE_EQ(*fv.get("conc_mean"), 3.0);
  EXPECT_DOUBLE_EQ(*fv.get("conc_sd"), 1.0);
  EXPECT_NEAR(*fv.get("conc_coverage"), 2.0 / 3.0, 1e-12);
  EXPECT_DOUBLE_EQ(*fv.get("conc_high_ratio"), 0.5);
  const auto none = parse_one("1\t了\tu\t0\tHED\n");
  const auto z = concreteness_features(none.sentences, lex);
  EXPECT_TRUE(z.has_flag("no-coverage"));
  EXPECT_EQ(*z.get("conc_mean") + *z.get("conc_sd") + *z.get("conc_coverage") + *z.get("conc_high_ratio"), 0.0);
}

TEST(Keyness, LogLikelihoodHandValue) {
  // Independent evaluation of the closed form with b smoothed to 0.5.
  const double a = 10, b = 0.5, c = 1000, d = 1000;
  const double e1 = c * (a + b) / (c + d), e2 = d * (a + b) / (c + d);
  const double oracle = 2 * (a * std::log(a / e1) + b * std::log(b / e2));
  EXPECT_NEAR(log_likelihood_g2(10, 0, 1000, 1000), oracle, 1e-12);
  EXPECT_NEAR(oracle, 10.5358, 1e-4);
  EXPECT_NEAR(log_likelihood_g2(20, 40, 1000, 2000), 0.0, 1e-12);
}

TEST(Keyness, SelectionRanksAndCaps) {
  const auto docs = cttstylo::testing::synthetic_corpus(cttstylo::testing::three_group_spec(4));
  std::vector<Chunk> chunks;
  for (const auto& d : docs) {
    for (auto& c : chunk_document(d, {400, 200})) chunks.push_back(std::move(c));
  }
  const auto ref = ref_from("word\t1\t他\t100000\nword\t1\t的\t90000\npos\t1\tn\t50000\npos\t2\tr\xE2\x90\x9Fv\t10\n");
  const auto specs = ngram_keyness_select(chunks, ref, {3, 5});
  std::map<std::pair<int, int>, std::vector<double>> by_bucket;
  for (const auto& s : specs) {
    EXPECT_EQ(s.gram.size(), std::size_t(s.n));
    EXPECT_GE(s.corpus_count, 5);
    by_bucket[{int(s.kind), s.n}].push_back(s.keyness);
  }
  EXPECT_EQ(by_bucket.size(), 6u);
  for (const auto& [k, v] : by_bucket) {
    EXPECT_LE(v.size(), 3u);
    EXPECT_TRUE(std::is_sorted(v.rbegin(), v.rend()));
  }
  const auto all = ngram_keyness_select(chunks, ref, {100000, 5});
  EXPECT_GT(all.size(), specs.size());
}

TEST(Ngrams, RelativeFrequency) {
  std::string body;
  for (int i = 1; i <= 100; ++i) {
    body += std::to_string(i) + "\t" + (i <= 2 ? "一样" : "词" + std::to_string(i)) + "\tn\t" + (i == 1 ? "0" : "1") +
            "\t" + (i == 1 ? "HED" : "ATT") + "\n";
  }
  const auto d = parse_one(body);
  NgramSpec yiyang{UnitKind::Word, 1, {"一样"}, 0, 0, 0};
  NgramSpec absent{UnitKind::Word, 1, {"没有"}, 0, 0, 0};
  const std::vector<NgramSpec> specs{yiyang, absent};
  const auto fv = ngram_feature_values(d.sentences, specs);
  EXPECT_EQ(yiyang.feature_name(), "word_1gram_一样");
  EXPECT_DOUBLE_EQ(*fv.get("word_1gram_一样"), 0.02);
  EXPECT_EQ(*fv.get("word_1gram_没有"), 0.0);
}
