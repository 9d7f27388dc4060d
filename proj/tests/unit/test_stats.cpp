#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "cttstylo/rng.hpp"
#include "cttstylo/stats.hpp"

using namespace cttstylo;

namespace {

// Chi-square as sum(O^2/E) - T over the class sums of one column.
double chi2_oracle(const Matrix& x, const std::vector<int>& y, std::size_t col) {
  std::map<int, double> sums;
  std::map<int, double> counts;
  double total = 0.0;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    sums[y[i]] += x(i, col);
    counts[y[i]] += 1.0;
    total += x(i, col);
  }
  if (total == 0.0) return 0.0;
  double s = 0.0;
  for (const auto& [c, o] : sums) s += o * o / (total * counts[c] / static_cast<double>(x.rows()));
  return s - total;
}

// Tie-aware H via the rank-variance form.
double kw_oracle(const std::vector<std::vector<double>>& groups) {
  std::vector<double> all;
  for (const auto& g : groups) all.insert(all.end(), g.begin(), g.end());
  auto rank = [&](double v) {
    double below = 0, equal = 0;
    for (double a : all) {
      below += a < v;
      equal += a == v;
    }
    return below + (equal + 1.0) / 2.0;
  };
  const double n = static_cast<double>(all.size());
  const double mean = (n + 1.0) / 2.0;
  double between = 0.0, spread = 0.0;
  for (const auto& g : groups) {
    double sum = 0.0;
    for (double v : g) {
      const double r = rank(v);
      sum += r;
      spread += (r - mean) * (r - mean);
    }
    const double rbar = sum / static_cast<double>(g.size());
    between += static_cast<double>(g.size()) * (rbar - mean) * (rbar - mean);
  }
  return (n - 1.0) * between / spread;
}

}  // namespace

TEST(ChiSquare, HandCase) {
  // Column a: sums 6 vs 2, E = 4, chi2 = (4 + 4) / 4 = 2.
  // Column b: sums 2 vs 1, E = 1.5, chi2 = (0.25 + 0.25) / 1.5 = 1/3.
  const Matrix x(4, 2, {3, 1, 3, 1, 1, 1, 1, 0});
  const std::vector<int> y{0, 0, 1, 1};
  const std::vector<std::string> names{"a", "b"};
  const auto r = chi_square_scores(x, y, names);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0].name, "a");
  EXPECT_DOUBLE_EQ(r[0].chi2, 2.0);
  EXPECT_DOUBLE_EQ(r[1].chi2, 1.0 / 3.0);
  const Matrix tie(2, 2, {1, 1, 0, 0});
  const std::vector<int> y2{0, 1};
  const std::vector<std::string> rev{"z", "m"};
  EXPECT_EQ(chi_square_scores(tie, y2, rev)[0].name, "m");
}

TEST(ChiSquare, MatchesOracleOnRandomMatrices) {
  Rng rng(7);
  for (int t = 0; t < 20; ++t) {
    Matrix x(30, 6);
    std::vector<int> y(30);
    for (std::size_t i = 0; i < 30; ++i) {
      y[i] = static_cast<int>(i % 3);
      for (std::size_t j = 0; j < 6; ++j) x(i, j) = rng.uniform() * 10.0;
    }
    std::vector<std::string> names{"f0", "f1", "f2", "f3", "f4", "f5"};
    for (const auto& f : chi_square_scores(x, y, names)) {
      const auto j = static_cast<std::size_t>(f.name[1] - '0');
      EXPECT_NEAR(f.chi2, chi2_oracle(x, y, j), 1e-9);
    }
  }
}

TEST(ChiSquare, ScalesLinearlyAndIgnoresOrder) {
  Rng rng(3);
  Matrix x(20, 1);
  std::vector<int> y(20);
  for (std::size_t i = 0; i < 20; ++i) {
    x(i, 0) = rng.uniform();
    y[i] = i < 8 ? 1 : 0;
  }
  const std::vector<std::string> names{"f"};
  const double base = chi_square_scores(x, y, names)[0].chi2;
  Matrix scaled = x;
  for (std::size_t i = 0; i < 20; ++i) scaled(i, 0) *= 3.5;
  EXPECT_NEAR(chi_square_scores(scaled, y, names)[0].chi2, 3.5 * base, 1e-9);
  Matrix rev(20, 1);
  std::vector<int> ry(20);
  for (std::size_t i = 0; i < 20; ++i) {
    rev(i, 0) = x(19 - i, 0);
    ry[i] = y[19 - i];
  }
  EXPECT_NEAR(chi_square_scores(rev, ry, names)[0].chi2, base, 1e-12);
}

TEST(ChiSquare, Errors) {
  const std::vector<std::string> names{"f"};
  const std::vector<std::string> ids{"s0", "s1"};
  const std::vector<int> y{0, 1};
  try {
    chi_square_scores(Matrix(2, 1, {1.0, -1.0}), y, names, ids);
    FAIL();
  } catch (const std::exception& e) {
    EXPECT_NE(std::string(e.what()).find("s1"), std::string::npos);
  }
  const std::vector<int> one{0, 0};
  EXPECT_THROW(chi_square_scores(Matrix(2, 1, 1.0), one, names), std::exception);
  const Matrix zero(2, 1, 0.0);
  EXPECT_EQ(chi_square_scores(zero, y, names)[0].chi2, 0.0);
}

TEST(SelectTopK, CapsAtSize) {
  const std::vector<RankedFeature> r{{"a", 3}, {"b", 2}, {"c", 1}};
  EXPECT_EQ(select_top_k(r, 2), (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(select_top_k(r, 30).size(), 3u);
}

TEST(Anova, HandCases) {
  const auto r = anova_f({{1, 2}, {3, 4}});
  EXPECT_NEAR(r.stat, 8.0, 1e-9);
  // F(1, 2) is the square of t(2): P(F > f) = 1 - sqrt(f / (f + 2)).
  EXPECT_NEAR(r.p, 1.0 - std::sqrt(8.0 / 10.0), 1e-9);
  EXPECT_NEAR(anova_f({{1, 2, 3}, {1, 2, 3}}).stat, 0.0, 1e-12);
  EXPECT_THROW(anova_f({{2, 2}, {5, 5}}), std::exception);
}

TEST(Anova, ShiftInvariant) {
  Rng rng(11);
  std::vector<std::vector<double>> g(3), h(3);
  for (std::size_t k = 0; k < 3; ++k) {
    for (int i = 0; i < 15; ++i) {
      const double v = rng.normal(static_cast<double>(k) * 0.3, 1.0);
      g[k].push_back(v);
      h[k].push_back(v + 1234.5);
    }
  }
  EXPECT_NEAR(anova_f(g).stat, anova_f(h).stat, 1e-6);
}

TEST(Anova, ShiftedGroupsAreSignificant) {
  Rng rng(21);
  std::vector<std::vector<double>> g(3);
  for (std::size_t k = 0; k < 3; ++k) {
    for (int i = 0; i < 40; ++i) g[k].push_back(rng.normal(static_cast<double>(k), 1.0));
  }
  EXPECT_LT(anova_f(g).p, 1e-3);
  EXPECT_LT(kruskal_wallis_h(g).p, 1e-3);
}

TEST(Kruskal, HandCases) {
  const auto r = kruskal_wallis_h({{1, 2}, {3, 4}});
  EXPECT_NEAR(r.stat, 2.4, 1e-9);
  EXPECT_NEAR(r.p, std::erfc(std::sqrt(2.4 / 2.0)), 1e-9);
  EXPECT_NEAR(kruskal_wallis_h({{1, 4}, {2, 3}}).stat, 0.0, 1e-12);
  const auto tied = kruskal_wallis_h({{5, 5}, {5, 5, 5}});
  EXPECT_EQ(tied.stat, 0.0);
  EXPECT_EQ(tied.p, 1.0);
  EXPECT_NE(std::find(tied.flags.begin(), tied.flags.end(), "all-tied"), tied.flags.end());
}

TEST(Kruskal, MatchesTieAwareOracle) {
  Rng rng(5);
  for (int t = 0; t < 30; ++t) {
    std::vector<std::vector<double>> g(3);
    for (auto& grp : g) {
      const auto n = 3 + rng.index(6);
      for (std::size_t i = 0; i < n; ++i) grp.push_back(static_cast<double>(rng.index(5)));
    }
    EXPECT_NEAR(kruskal_wallis_h(g).stat, kw_oracle(g), 1e-9);
  }
}

TEST(Kruskal, DependsOnlyOnRanks) {
  Rng rng(8);
  std::vector<std::vector<double>> g(3), h(3);
  for (std::size_t k = 0; k < 3; ++k) {
    for (int i = 0; i < 10; ++i) {
      const double v = rng.normal(static_cast<double>(k) * 0.5, 1.0);
      g[k].push_back(v);
      h[k].push_back(std::exp(v) * 3.0 + 1.0);
    }
  }
  EXPECT_NEAR(kruskal_wallis_h(g).stat, kruskal_wallis_h(h).stat, 1e-9);
}

TEST(JarqueBera, ConstructedMesokurticSample) {
  // Symmetric, so S = 0; m2 = m4 = 1/3, so K = 3.
  const std::vector<double> xs{-1, -1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0};
  const auto jb = jarque_bera(xs);
  EXPECT_NEAR(jb.stat, 0.0, 1e-12);
  EXPECT_NEAR(jb.p, 1.0, 1e-12);
  const std::vector<double> flat(10, 2.0);
  EXPECT_TRUE(jarque_bera(flat).degenerate);
}

TEST(NormalityGate, Decisions) {
  Rng rng(2024);
  std::vector<double> normal_a, normal_b, skewed;
  for (int i = 0; i < 100; ++i) {
    normal_a.push_back(rng.normal(0.0, 1.0));
    normal_b.push_back(rng.normal(1.0, 1.0));
    skewed.push_back(rng.exponential(1.0));
  }
  EXPECT_EQ(normality_gate({normal_a, normal_b}).decision, GateDecision::Anova);
  EXPECT_EQ(normality_gate({normal_a, skewed}).decision, GateDecision::Kruskal);
  const auto small = normality_gate({normal_a, {1, 2, 3}});
  EXPECT_EQ(small.decision, GateDecision::Kruskal);
  EXPECT_NE(std::find(small.flags.begin(), small.flags.end(), "small-sample"), small.flags.end());
}

TEST(ZScore, Examples) {
  const auto z = zscore_columns(Matrix(2, 2, {1, 7, 3, 7}));
  EXPECT_DOUBLE_EQ(z.z(0, 0), -1.0);
  EXPECT_DOUBLE_EQ(z.z(1, 0), 1.0);
  EXPECT_EQ(z.z(0, 1), 0.0);
  EXPECT_EQ(z.zero_sd_columns, (std::vector<std::size_t>{1}));

  Rng rng(1);
  Matrix x(40, 3);
  for (std::size_t i = 0; i < 40; ++i) {
    for (std::size_t j = 0; j < 3; ++j) x(i, j) = rng.normal(5.0, 2.0);
  }
  const auto s = zscore_columns(x);
  for (std::size_t j = 0; j < 3; ++j) {
    const auto c = s.z.column(j);
    const double mean = std::accumulate(c.begin(), c.end(), 0.0) / 40.0;
    double var = 0.0;
    for (double v : c) var += (v - mean) * (v - mean);
    EXPECT_NEAR(mean, 0.0, 1e-9);
    EXPECT_NEAR(std::sqrt(var / 40.0), 1.0, 1e-9);
  }
}
