#include "cttstylo/feat_generic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_set>

#include "cttstylo/error.hpp"
#include "cttstylo/text.hpp"

namespace cttstylo {

// --- lexical diversity -------------------------------------------------------

double compute_ttr(std::span<const std::string> tokens) {
  if (tokens.empty()) throw std::invalid_argument("compute_ttr: empty input");
  std::unordered_set<std::string_view> types(tokens.begin(), tokens.end());
  return static_cast<double>(types.size()) / static_cast<double>(tokens.size());
}

double compute_sttr(std::span<const std::string> tokens, std::size_t window) {
  if (tokens.empty()) throw std::invalid_argument("compute_sttr: empty input");
  if (window == 0) throw std::invalid_argument("compute_sttr: window must be positive");
  if (tokens.size() < window) return compute_ttr(tokens);
  const std::size_t windows = tokens.size() / window;
  double sum = 0.0;
  for (std::size_t w = 0; w < windows; ++w) sum += compute_ttr(tokens.subspan(w * window, window));
  return sum / static_cast<double>(windows);
}

namespace {

template <typename It>
double mtld_pass(It first, It last, std::size_t n, double threshold) {
  double factors = 0.0;
  std::unordered_set<std::string_view> types;
  std::size_t count = 0;
  double ttr = 1.0;
  for (auto it = first; it != last; ++it) {
    types.insert(*it);
    ++count;
    ttr = static_cast<double>(types.size()) / static_cast<double>(count);
    if (ttr <= threshold) {
      factors += 1.0;
      types.clear();
      count = 0;
      ttr = 1.0;
    }
  }
  if (count > 0) factors += (1.0 - ttr) / (1.0 - threshold);
  return factors > 0.0 ? static_cast<double>(n) / factors : static_cast<double>(n);
}

}  // namespace

double compute_mtld_directional(std::span<const std::string> tokens, double threshold) {
  if (tokens.empty()) throw std::invalid_argument("compute_mtld: empty input");
  return mtld_pass(tokens.begin(), tokens.end(), tokens.size(), threshold);
}

double compute_mtld(std::span<const std::string> tokens, double threshold) {
  if (tokens.empty()) throw std::invalid_argument("compute_mtld: empty input");
  if (!(threshold > 0.0 && threshold < 1.0)) throw std::invalid_argument("compute_mtld: threshold must be in (0,1)");
  const double fwd = mtld_pass(tokens.begin(), tokens.end(), tokens.size(), threshold);
  const double bwd = mtld_pass(tokens.rbegin(), tokens.rend(), tokens.size(), threshold);
  return 0.5 * (fwd + bwd);
}

FeatureVector lexical_diversity_features(std::span<const Sentence> sample, const LexicalParams& params) {
  const auto words = surfaces(sample);
  FeatureVector fv;
  if (words.empty()) {
    fv.add("lex_ttr", 0.0);
    fv.add("lex_sttr", 0.0);
    fv.add("lex_mtld", 0.0);
    fv.flags.push_back("empty-sample");
    return fv;
  }
  fv.add("lex_ttr", compute_ttr(words));
  fv.add("lex_sttr", compute_sttr(words, params.sttr_window));
  fv.add("lex_mtld", compute_mtld(words, params.mtld_threshold));
  return fv;
}

// --- word classes ------------------------------------------------------------

FeatureVector pos_ratio_features(std::span<const Sentence> sample, const TagConfig& tags, const WordList* idioms) {
  std::map<std::string, std::size_t> counts;
  std::size_t total = 0, content = 0, descriptive = 0, idiom = 0;
  for (const auto& s : sample) {
    for (const auto& t : s.tokens) {
      ++total;
      ++counts[t.pos];
      if (tags.content.contains(t.pos)) ++content;
      if (tags.descriptive.contains(t.pos)) ++descriptive;
      if (idioms ? idioms->contains(t.surface) : t.pos == tags.idiom) ++idiom;
    }
  }
  const double denom = total ? static_cast<double>(total) : 1.0;
  auto count_of = [&](const std::string& tag) {
    const auto it = counts.find(tag);
    return it == counts.end() ? std::size_t{0} : it->second;
  };

  FeatureVector fv;
  std::size_t covered = 0;
  for (const auto& tag : tags.tagset) {
    const auto c = count_of(tag);
    covered += c;
    fv.add("lex_pos_" + tag, static_cast<double>(c) / denom);
  }
  fv.add("lex_pos_OTHER", static_cast<double>(total - covered) / denom);
  fv.add("lex_ratio_ContentWords", static_cast<double>(content) / denom);
  fv.add("lex_ratio_adverb", static_cast<double>(count_of(tags.adverb)) / denom);
  fv.add("lex_ratio_conjunction", static_cast<double>(count_of(tags.conjunction)) / denom);
  fv.add("lex_ratio_dscrptW", static_cast<double>(descriptive) / denom);
  fv.add("lex_ratio_prep", static_cast<double>(count_of(tags.preposition)) / denom);
  fv.add("lex_ratio_idiom", static_cast<double>(idiom) / denom);
  return fv;
}

// --- syntax ------------------------------------------------------------------

namespace {

bool is_closing_mark(char32_t c) {
  switch (c) {
    case U'”': case U'’': case U'」': case U'』': case U'"': case U'\'': case U'）': case U')':
    case U'》': case U'〉': case U'】': case U' ':
      return true;
    default:
      return false;
  }
}

bool is_question(const Sentence& s) {
  for (auto it = s.tokens.rbegin(); it != s.tokens.rend(); ++it) {
    const auto cps = text::decode_utf8(it->surface);
    for (auto c = cps.rbegin(); c != cps.rend(); ++c) {
      if (is_closing_mark(*c)) continue;
      return *c == U'？' || *c == U'?';
    }
  }
  return false;
}

}  // namespace

double mean_dependency_distance(std::span<const Sentence> sample) {
  std::size_t arcs = 0;
  double sum = 0.0;
  for (const auto& s : sample) {
    for (const auto& t : s.tokens) {
      if (t.head == 0) continue;
      sum += std::abs(t.index - t.head);
      ++arcs;
    }
  }
  return arcs ? sum / static_cast<double>(arcs) : 0.0;
}

double avg_children_per_node(std::span<const Sentence> sample) {
  std::size_t internal = 0, children = 0;
  for (const auto& s : sample) {
    std::vector<std::size_t> out_degree(s.size() + 1, 0);
    for (const auto& t : s.tokens) {
      if (t.head > 0) ++out_degree[static_cast<std::size_t>(t.head)];
    }
    for (std::size_t i = 1; i < out_degree.size(); ++i) {
      if (out_degree[i] > 0) {
        ++internal;
        children += out_degree[i];
      }
    }
  }
  return internal ? static_cast<double>(children) / static_cast<double>(internal) : 0.0;
}

FeatureVector syntactic_features(std::span<const Sentence> sample, const DeprelConfig& deprels) {
  FeatureVector fv;
  std::size_t tokens = 0, questions = 0, arcs = 0, internal = 0;
  std::map<std::string, std::size_t> rel_counts;
  for (const auto& s : sample) {
    tokens += s.size();
    if (is_question(s)) ++questions;
    std::vector<bool> has_child(s.size() + 1, false);
    for (const auto& t : s.tokens) {
      ++rel_counts[t.deprel];
      if (t.head > 0) {
        ++arcs;
        has_child[static_cast<std::size_t>(t.head)] = true;
      }
    }
    internal += static_cast<std::size_t>(std::count(has_child.begin() + 1, has_child.end(), true));
  }
  const double n_sent = sample.empty() ? 1.0 : static_cast<double>(sample.size());
  const double n_tok = tokens ? static_cast<double>(tokens) : 1.0;

  fv.add("syn_words_per_sent", static_cast<double>(tokens) / n_sent);
  fv.add("syn_question_ratio", static_cast<double>(questions) / n_sent);
  fv.add("syn_mdd", mean_dependency_distance(sample));
  fv.add("syn_avg_children_per_node", avg_children_per_node(sample));
  fv.add("syn_head_node_ratio", static_cast<double>(internal) / n_tok);
  std::size_t covered = 0;
  for (const auto& rel : deprels.relations) {
    const auto it = rel_counts.find(rel);
    const std::size_t c = it == rel_counts.end() ? 0 : it->second;
    covered += c;
    fv.add("syn_dep_" + rel, static_cast<double>(c) / n_tok);
  }
  fv.add("syn_dep_OTHER", static_cast<double>(tokens - covered) / n_tok);
  if (arcs == 0) fv.flags.push_back("no-deps");
  return fv;
}

// --- readability proxies -----------------------------------------------------

FeatureVector readability_features(std::span<const Sentence> sample, const RefNgramTable& ref, const TagConfig& tags,
                                   const ReadabilityParams& params) {
  std::size_t words = 0, chars = 0, function_words = 0, all_tokens = 0;
  double log_freq_sum = 0.0;
  std::vector<double> sentence_chars;
  std::unordered_set<std::string> types;
  for (const auto& s : sample) {
    std::size_t sc = 0;
    for (const auto& t : s.tokens) {
      ++all_tokens;
      if (tags.function.contains(t.pos)) ++function_words;
      if (tags.punctuation.contains(t.pos)) continue;
      const auto len = text::length(t.surface);
      ++words;
      chars += len;
      sc += len;
      types.insert(t.surface);
      log_freq_sum += std::log1p(static_cast<double>(ref.count(UnitKind::Word, 1, t.surface)));
    }
    sentence_chars.push_back(static_cast<double>(sc));
  }

  const auto& ranked = ref.ranked_unigrams(UnitKind::Word);
  const std::size_t top = std::min(params.richness_top, ranked.size());
  const std::unordered_set<std::string_view> common(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(top));
  std::size_t rare_types = 0;
  for (const auto& t : types) {
    if (!common.contains(t)) ++rare_types;
  }

  double mean_sc = 0.0, sd_sc = 0.0;
  if (!sentence_chars.empty()) {
    for (double v : sentence_chars) mean_sc += v;
    mean_sc /= static_cast<double>(sentence_chars.size());
    for (double v : sentence_chars) sd_sc += (v - mean_sc) * (v - mean_sc);
    sd_sc = std::sqrt(sd_sc / static_cast<double>(sentence_chars.size()));
  }

  FeatureVector fv;
  fv.add("rdprx_word_length", words ? static_cast<double>(chars) / static_cast<double>(words) : 0.0);
  fv.add("rdprx_sentence_length_chars", mean_sc);
  fv.add("rdprx_sentence_length_sd", sd_sc);
  fv.add("rdprx_lexical_richness",
         types.empty() ? 0.0 : static_cast<double>(rare_types) / static_cast<double>(types.size()));
  fv.add("rdprx_function_word_ratio",
         all_tokens ? static_cast<double>(function_words) / static_cast<double>(all_tokens) : 0.0);
  fv.add("rdprx_log_ref_freq", words ? log_freq_sum / static_cast<double>(words) : 0.0);
  return fv;
}

// --- concreteness ------------------------------------------------------------

FeatureVector concreteness_features(std::span<const Sentence> sample, const ScalarLexicon& lex) {
  std::vector<double> scores;
  std::size_t tokens = 0;
  for (const auto& s : sample) {
    for (const auto& t : s.tokens) {
      ++tokens;
      if (auto v = lex.score(t.surface)) scores.push_back(*v);
    }
  }
  FeatureVector fv;
  if (scores.empty()) {
    fv.add("conc_mean", 0.0);
    fv.add("conc_sd", 0.0);
    fv.add("conc_coverage", 0.0);
    fv.add("conc_high_ratio", 0.0);
    fv.flags.push_back("no-coverage");
    return fv;
  }
  const double n = static_cast<double>(scores.size());
  double mean = 0.0;
  for (double v : scores) mean += v;
  mean /= n;
  double var = 0.0;
  std::size_t high = 0;
  for (double v : scores) {
    var += (v - mean) * (v - mean);
    if (v > lex.midpoint()) ++high;
  }
  fv.add("conc_mean", mean);
  fv.add("conc_sd", std::sqrt(var / n));
  fv.add("conc_coverage", n / static_cast<double>(tokens));
  fv.add("conc_high_ratio", static_cast<double>(high) / n);
  return fv;
}

// --- n-grams -----------------------------------------------------------------

std::string NgramSpec::feature_name() const {
  std::string name = std::string(unit_kind_name(kind)) + "_" + std::to_string(n) + "gram";
  for (const auto& u : gram) name += "_" + u;
  return name;
}

void NgramCounts::add(std::span<const Sentence> sample) {
  std::vector<std::string> units;
  for (const auto& s : sample) {
    for (const UnitKind kind : {UnitKind::Word, UnitKind::Pos}) {
      units.clear();
      for (const auto& t : s.tokens) units.push_back(kind == UnitKind::Word ? t.surface : t.pos);
      for (int n = 1; n <= 3; ++n) {
        if (units.size() < static_cast<std::size_t>(n)) break;
        const auto b = bucket(kind, n);
        for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= units.size(); ++i) {
          ++counts[b][join_gram(std::span<const std::string>(units).subspan(i, static_cast<std::size_t>(n)))];
          ++totals[b];
        }
      }
    }
  }
}

NgramCounts count_ngrams(std::span<const Sentence> sample) {
  NgramCounts c;
  c.add(sample);
  return c;
}

double log_likelihood_g2(double a, double b, double c, double d) {
  if (!(c > 0.0 && d > 0.0)) throw std::invalid_argument("log_likelihood_g2: totals must be positive");
  if (a <= 0.0) a = 0.5;
  if (b <= 0.0) b = 0.5;
  const double e1 = c * (a + b) / (c + d);
  const double e2 = d * (a + b) / (c + d);
  return 2.0 * (a * std::log(a / e1) + b * std::log(b / e2));
}

std::vector<NgramSpec> ngram_keyness_select(std::span<const Chunk> samples, const RefNgramTable& ref,
                                            const KeynessParams& params) {
  if (samples.empty()) throw Error("ngram_keyness_select: empty corpus");
  NgramCounts corpus;
  for (const auto& c : samples) corpus.add(c.sentences);

  std::vector<NgramSpec> selected;
  for (const UnitKind kind : {UnitKind::Word, UnitKind::Pos}) {
    const double c_total = static_cast<double>(corpus.totals[NgramCounts::bucket(kind, 1)]);
    const double d_total = static_cast<double>(ref.total(kind));
    if (c_total <= 0.0) throw Error("ngram_keyness_select: empty corpus");
    if (d_total <= 0.0) {
      throw Error("ngram_keyness_select: reference table has no " + std::string(unit_kind_name(kind)) + " unigrams");
    }
    for (int n = 1; n <= 3; ++n) {
      struct Candidate {
        const std::string* gram;
        std::int64_t a, b;
        double g2;
      };
      std::vector<Candidate> cands;
      for (const auto& [gram, a] : corpus.counts[NgramCounts::bucket(kind, n)]) {
        if (a < params.min_count) continue;
        const auto b = ref.count(kind, n, gram);
        cands.push_back({&gram, a, b, log_likelihood_g2(static_cast<double>(a), static_cast<double>(b), c_total, d_total)});
      }
      std::sort(cands.begin(), cands.end(), [](const Candidate& x, const Candidate& y) {
        if (x.g2 != y.g2) return x.g2 > y.g2;
        if (x.a != y.a) return x.a > y.a;
        return *x.gram < *y.gram;
      });
      if (cands.size() > params.per_bucket) cands.resize(params.per_bucket);
      for (const auto& cand : cands) {
        NgramSpec spec;
        spec.kind = kind;
        spec.n = n;
        for (std::size_t p = 0;;) {
          const auto q = cand.gram->find(kGramSeparator, p);
          spec.gram.push_back(cand.gram->substr(p, q == std::string::npos ? std::string::npos : q - p));
          if (q == std::string::npos) break;
          p = q + kGramSeparator.size();
        }
        spec.keyness = cand.g2;
        spec.corpus_count = cand.a;
        spec.reference_count = cand.b;
        selected.push_back(std::move(spec));
      }
    }
  }
  return selected;
}

FeatureVector ngram_feature_values(std::span<const Sentence> sample, std::span<const NgramSpec> specs) {
  const auto counts = count_ngrams(sample);
  FeatureVector fv;
  for (const auto& spec : specs) {
    const auto b = NgramCounts::bucket(spec.kind, spec.n);
    const auto it = counts.counts[b].find(join_gram(spec.gram));
    const double c = it == counts.counts[b].end() ? 0.0 : static_cast<double>(it->second);
    const double total = static_cast<double>(counts.totals[b]);
    fv.add(spec.feature_name(), total > 0.0 ? c / total : 0.0);
  }
  return fv;
}

}  // namespace cttstylo
