// Prints one PASS/FAIL line per acceptance criterion; exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "cttstylo/classify.hpp"
#include "cttstylo/cluster.hpp"
#include "cttstylo/features.hpp"
#include "cttstylo/rng.hpp"
#include "cttstylo/stats.hpp"
#include "cttstylo/text.hpp"
#include "synthetic.hpp"

using namespace cttstylo;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Check {
  bool ok = true;
  std::string detail;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

// Observed-sum chi-square for one column, computed as sum(O^2/E) - T.
double chi2_brute(const Matrix& x, const std::vector<int>& y, std::size_t col) {
  std::map<int, double> sum, n;
  double total = 0.0;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    sum[y[i]] += x(i, col);
    n[y[i]] += 1.0;
    total += x(i, col);
  }
  if (total == 0.0) return 0.0;
  double s = 0.0;
  for (const auto& [c, o] : sum) s += o * o / (total * n[c] / static_cast<double>(x.rows()));
  return s - total;
}

Check criterion1() {
  Check c;
  const auto t0 = Clock::now();
  Rng rng(20240101);
  std::vector<std::string> names;
  for (int j = 0; j < 20; ++j) names.push_back("f" + std::to_string(j));
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    Matrix x(50, 20);
    std::vector<int> y(50);
    for (std::size_t i = 0; i < 50; ++i) {
      y[i] = static_cast<int>(rng.index(3));
      for (std::size_t j = 0; j < 20; ++j) x(i, j) = rng.uniform() * 100.0;
    }
    y[0] = 0;
    y[1] = 1;
    for (const auto& f : chi_square_scores(x, y, names)) {
      const auto j = static_cast<std::size_t>(std::stoi(f.name.substr(1)));
      worst = std::max(worst, std::fabs(f.chi2 - chi2_brute(x, y, j)));
    }
  }
  const double secs = seconds_since(t0);
  c.expect(worst <= 1e-9, "max deviation " + std::to_string(worst));
  c.expect(secs < 5.0, "runtime " + std::to_string(secs) + " s");
  if (c.ok) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "max deviation %.2e, %.3f s", worst, secs);
    c.detail = buf;
  }
  return c;
}

Check criterion2() {
  Check c;
  const std::vector<int> t{0, 0, 1, 1};
  const double same = adjusted_rand_index(t, t);
  const double one = adjusted_rand_index(t, std::vector<int>{0, 0, 0, 0});
  const double swapped = adjusted_rand_index(t, std::vector<int>{0, 1, 0, 1});
  c.expect(same == 1.0, "identical = " + std::to_string(same));
  c.expect(one == 0.0, "one cluster = " + std::to_string(one));
  c.expect(std::fabs(swapped + 0.5) <= 1e-12, "[0,1,0,1] = " + std::to_string(swapped));
  if (c.ok) c.detail = "1.0 / 0.0 / -0.5";
  return c;
}

struct Labeled {
  Matrix x;
  std::vector<int> y;
};

Labeled separable(std::uint64_t seed) {
  Rng rng(seed);
  Labeled d{Matrix(200, 4), std::vector<int>(200)};
  for (std::size_t i = 0; i < 200; ++i) {
    const int cls = i % 2 == 0 ? 0 : 1;
    d.y[i] = cls;
    for (std::size_t j = 0; j < 4; ++j) d.x(i, j) = 10.0 + 6.0 * cls + rng.normal(0.0, 1.0);
  }
  return d;
}

Check criterion3() {
  Check c;
  const auto d = separable(7);
  const CvPlan plan{5, 11, Grouping::Chunk};
  std::string accs;
  for (auto kind : kAllClassifiers) {
    const auto r = cross_validate(kind, d.x, d.y, {}, plan);
    accs += std::string(classifier_name(kind)) + "=" + text::format_double(r.mean) + " ";
    c.expect(r.mean >= 0.95, std::string(classifier_name(kind)) + " held-out " + std::to_string(r.mean));
  }

  double sum = 0.0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    auto y = d.y;
    Rng rng(derive_seed(99, s));
    rng.shuffle(std::span<int>(y));
    sum += ensemble_accuracy(d.x, y, {}, CvPlan{5, s, Grouping::Chunk}).mean;
  }
  const double chance = sum / 20.0;
  c.expect(std::fabs(chance - 0.5) <= 0.1, "permutation control " + std::to_string(chance));

  for (auto kind : kAllClassifiers) {
    const auto a = train(kind, d.x, d.y, {}, 5)->predict(d.x);
    const auto b = train(kind, d.x, d.y, {}, 5)->predict(d.x);
    c.expect(a == b, std::string(classifier_name(kind)) + " rerun differs");
  }
  const auto e1 = ensemble_accuracy(d.x, d.y, {}, plan);
  const auto e2 = ensemble_accuracy(d.x, d.y, {}, plan);
  c.expect(e1.mean == e2.mean && e1.folds == e2.folds, "ensemble rerun differs");
  if (c.ok) c.detail = accs + "permuted=" + text::format_double(chance);
  return c;
}

Check criterion4() {
  Check c;
  std::vector<int> truth(100, 0);
  for (std::size_t i = 50; i < 100; ++i) truth[i] = 1;
  for (std::uint64_t s = 1; s <= 10; ++s) {
    Rng rng(s);
    Matrix x(100, 2);
    for (std::size_t i = 0; i < 100; ++i) {
      x(i, 0) = (i < 50 ? 0.0 : 10.0) + rng.normal(0.0, 0.1);
      x(i, 1) = rng.normal(0.0, 0.1);
    }
    for (std::size_t r = 0; r < 3; ++r) {
      KmeansParams p;
      p.k = 2;
      p.seed = derive_seed(s, r);
      p.n_init = r == 0 ? 10 : 1;
      const auto res = kmeans(x, p);
      if (r == 0) c.expect(adjusted_rand_index(truth, res.assignment) == 1.0, "ARI < 1 at seed " + std::to_string(s));
      for (std::size_t i = 1; i < res.inertia_history.size(); ++i) {
        c.expect(res.inertia_history[i] <= res.inertia_history[i - 1], "inertia rose at seed " + std::to_string(s));
      }
    }
  }
  if (c.ok) c.detail = "ARI 1.0 on seeds 1-10, inertia monotone";
  return c;
}

void heights_ok(const DendrogramNode& n, bool& ok) {
  if (n.leaf()) return;
  for (const auto* ch : {n.left.get(), n.right.get()}) {
    ok = ok && n.height >= ch->height;
    heights_ok(*ch, ok);
  }
}

// Same shape and leaf ids; heights equal up to decimal round-off of branch lengths.
bool same_tree(const DendrogramNode& a, const DendrogramNode& b) {
  if (a.leaf() != b.leaf() || std::fabs(a.height - b.height) > 1e-9) return false;
  if (a.leaf()) return a.id == b.id;
  return same_tree(*a.left, *b.left) && same_tree(*a.right, *b.right);
}

Check criterion5() {
  Check c;
  const std::vector<double> za{1.0, -1.0}, zb{0.0, 0.0};
  const double burrows = delta_distance(za, zb, DeltaParams{DeltaKind::Burrows});
  const double eder = delta_distance(za, zb, DeltaParams{DeltaKind::Eder});
  c.expect(burrows == 1.0, "Burrows " + std::to_string(burrows));
  c.expect(eder == 0.75, "Eder " + std::to_string(eder));

  Rng rng(555);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 3 + rng.index(18);
    Matrix d(n, n);
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < n; ++i) {
      ids.push_back("doc" + std::to_string(i));
      for (std::size_t j = i + 1; j < n; ++j) d(i, j) = d(j, i) = rng.uniform();
    }
    const auto root = agglomerative_cluster(d, ids);
    bool ok = true;
    heights_ok(*root, ok);
    c.expect(ok, "non-monotone heights on matrix " + std::to_string(t));
    const auto text = write_newick(*root);
    const auto back = parse_newick(text);
    c.expect(same_tree(*back, *root),
             "Newick round-trip failed on matrix " + std::to_string(t));
  }
  if (c.ok) c.detail = "Burrows 1.0, Eder 0.75, 100 trees monotone and round-tripped";
  return c;
}

LexiconBundle load_bundle(const fs::path& dir, bool fixture) {
  LexiconBundle lex;
  lex.pinyin = PinyinLexicon::load((dir / "pinyin.tsv").string());
  lex.concreteness = ScalarLexicon::load((dir / "concreteness.tsv").string(), "concreteness");
  lex.onomatopoeia = WordList::load((dir / "onomatopoeia.txt").string(), "onomatopoeia");
  lex.strong_modifiers = WordList::load((dir / "strong_modifiers.txt").string(), "strong_modifiers");
  lex.sentence_final_particles = WordList::load((dir / "particles.txt").string(), "particles");
  if (fixture) lex.untranslatable = WordList::load((dir / "untranslatable.txt").string(), "untranslatable");
  lex.reference = RefNgramTable::load((dir / "reference.tsv").string());
  return lex;
}

Check criterion6() {
  Check c;
  const fs::path data(CTTSTYLO_TEST_DATA);
  const auto docs = load_corpus_file((data / "golden.txt").string());
  c.expect(docs.size() == 1 && docs[0].sentences.size() == 20, "fixture shape");
  if (!c.ok) return c;
  const auto samples = chunk_document(docs[0], ChunkParams{100000, 1});
  const auto lex = load_bundle(data, true);
  const auto m = extract_features(samples, lex, ExtractionConfig{}).matrix;
  const double tokens = static_cast<double>(docs[0].token_count());
  auto value = [&](const std::string& name) {
    const auto j = m.feature_index(name);
    return j == npos ? -1.0 : m.values(0, j);
  };
  // Hand counts: per-1,000-token features are count * 1000 / tokens.
  const std::vector<std::pair<std::string, double>> expected{
      {"rep_AA", 2.0 * 1000.0 / tokens},
      {"rep_ABAB", 1.0 * 1000.0 / tokens},
      {"misc_ratio_er_suffix", 3.0 * 1000.0 / tokens},
      {"trans_completeness", 1.0 * 1000.0 / tokens},
      {"misc_ratio_quote", 3.0 / 20.0},
  };
  for (const auto& [name, want] : expected) {
    c.expect(value(name) == want, name + " = " + std::to_string(value(name)) + ", want " + std::to_string(want));
  }
  const std::vector<Sentence> tink{docs[0].sentences[3]};
  const double foreign = *translatability_features(tink).get("trans_foreignness");
  c.expect(foreign == 4.0 / 13.0, "foreignness " + std::to_string(foreign));
  if (c.ok) c.detail = "AA=2 ABAB=1 er=3 completeness=1 quotes=3/20 foreignness=4/13";
  return c;
}

Check criterion7() {
  Check c;
  const auto t0 = Clock::now();
  const fs::path dir = fs::temp_directory_path() / "cttstylo-acceptance";
  fs::remove_all(dir);
  const auto docs = cttstylo::testing::synthetic_corpus(cttstylo::testing::three_group_spec(2024));
  const auto ws = cttstylo::testing::write_workspace(dir, docs, 2024);
  const auto loaded = load_corpus_file(ws.corpus.string());
  std::vector<Chunk> samples;
  for (const auto& d : loaded) {
    for (auto& ch : chunk_document(d, ChunkParams{400, 200})) samples.push_back(std::move(ch));
  }
  const auto lex = load_bundle(dir, false);
  const auto m = extract_features(samples, lex, ExtractionConfig{}).matrix;

  std::vector<int> y3;
  std::vector<std::string> doc_ids;
  for (const auto& s : m.samples) {
    y3.push_back(s.group == Group::HT ? 0 : s.group == Group::NMT ? 1 : 2);
    doc_ids.push_back(s.document);
  }
  const auto top = select_top_k(chi_square_scores(m, y3), 30);
  for (const char* marker : {"rep_AA", "trans_foreignness"}) {
    c.expect(std::find(top.begin(), top.end(), marker) != top.end(), std::string(marker) + " not in top-30");
  }

  struct Pair {
    const char* name;
    std::vector<Group> a, b;
  };
  const std::vector<Pair> pairs{{"HT-MT", {Group::HT}, {Group::NMT, Group::LLM}},
                                {"HT-NMT", {Group::HT}, {Group::NMT}},
                                {"HT-LLM", {Group::HT}, {Group::LLM}},
                                {"NMT-LLM", {Group::NMT}, {Group::LLM}}};
  std::string accs;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    std::vector<std::size_t> rows;
    std::vector<int> y;
    auto in = [](const std::vector<Group>& gs, Group g) { return std::find(gs.begin(), gs.end(), g) != gs.end(); };
    for (std::size_t i = 0; i < m.samples.size(); ++i) {
      const auto g = m.samples[i].group;
      if (in(pairs[p].a, g) || in(pairs[p].b, g)) {
        rows.push_back(i);
        y.push_back(in(pairs[p].a, g) ? 0 : 1);
      }
    }
    const auto sub = m.select_samples(rows);
    const auto feats = select_top_k(chi_square_scores(sub, y), 30);
    const auto x = sub.select_features(feats);
    std::vector<std::string> docs_sub;
    for (const auto& s : sub.samples) docs_sub.push_back(s.document);
    const auto e = ensemble_accuracy(x.values, y, docs_sub, CvPlan{5, derive_seed(2024, p), Grouping::Document});
    accs += std::string(pairs[p].name) + "=" + text::format_double(e.mean) + " ";
    c.expect(e.mean >= 0.9, std::string(pairs[p].name) + " accuracy " + std::to_string(e.mean));
  }
  fs::remove_all(dir);
  const double secs = seconds_since(t0);
  c.expect(secs < 120.0, "runtime " + std::to_string(secs) + " s");
  if (c.ok) c.detail = accs + "markers in top-30, " + std::to_string(static_cast<int>(secs)) + " s";
  return c;
}

Check criterion8() {
  Check c;
  const double f = anova_f({{1, 2}, {3, 4}}).stat;
  const double h = kruskal_wallis_h({{1, 2}, {3, 4}}).stat;
  const std::vector<double> meso{-1, -1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0};
  const double jb = jarque_bera(meso).stat;
  c.expect(std::fabs(f - 8.0) <= 1e-9, "F = " + std::to_string(f));
  c.expect(std::fabs(h - 2.4) <= 1e-9, "H = " + std::to_string(h));
  c.expect(std::fabs(jb) <= 1e-12, "JB = " + std::to_string(jb));
  Rng rng(8088);
  std::vector<std::vector<double>> groups(3);
  for (std::size_t g = 0; g < 3; ++g) {
    for (int i = 0; i < 30; ++i) groups[g].push_back(rng.normal(static_cast<double>(g), 1.0));
  }
  const double pa = anova_f(groups).p, pk = kruskal_wallis_h(groups).p;
  c.expect(pa < 1e-3 && pk < 1e-3, "shifted p = " + std::to_string(pa) + " / " + std::to_string(pk));
  if (c.ok) c.detail = "F=8 H=2.4 JB=0, shifted p < 0.001";
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Check()>>> criteria{
      {"chi-square oracle equivalence", criterion1},  {"ARI closed form", criterion2},
      {"classifier sanity", criterion3},              {"k-means blobs", criterion4},
      {"delta and dendrogram", criterion5},           {"golden feature fixture", criterion6},
      {"end-to-end synthetic pipeline", criterion7},   {"statistics hand cases", criterion8},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    try {
      c = criteria[i].second();
    } catch (const std::exception& e) {
      c.ok = false;
      c.detail = std::string("exception: ") + e.what();
    }
    std::printf("criterion %zu %s: %s (%s)\n", i + 1, criteria[i].first, c.ok ? "PASS" : "FAIL", c.detail.c_str());
    std::fflush(stdout);
    failed += c.ok ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
