#pragma once

// Chi-square feature ranking, group-difference tests and column
// standardization.

#include <span>
#include <string>
#include <vector>

#include "cttstylo/matrix.hpp"

namespace cttstylo {

struct RankedFeature {
  std::string name;
  double chi2 = 0.0;
};

// Observed-sum chi-square per column against class labels 0..K-1. Sorted by
// score desc, then name asc. Negative entries throw, naming feature and sample.
std::vector<RankedFeature> chi_square_scores(const Matrix& x, std::span<const int> labels,
                                             std::span<const std::string> feature_names,
                                             std::span<const std::string> sample_ids = {});
std::vector<RankedFeature> chi_square_scores(const FeatureMatrix& m, std::span<const int> labels);

std::vector<std::string> select_top_k(std::span<const RankedFeature> ranked, std::size_t k = 30);

struct TestResult {
  double stat = 0.0;
  double p = 1.0;
  std::vector<std::string> flags;
};

// One-way ANOVA. Throws Error("degenerate variance") when every group has
// zero spread.
TestResult anova_f(const std::vector<std::vector<double>>& groups);

// Tie-corrected Kruskal-Wallis H with a chi-square(k-1) p-value. Flags
// "all-tied" (H = 0, p = 1) when every value is equal.
TestResult kruskal_wallis_h(const std::vector<std::vector<double>>& groups);

struct JarqueBera {
  double stat = 0.0;
  double p = 1.0;
  bool degenerate = false;  // zero variance
};

JarqueBera jarque_bera(std::span<const double> xs);

enum class GateDecision { Anova, Kruskal };

struct GateResult {
  GateDecision decision = GateDecision::Kruskal;
  std::vector<JarqueBera> per_group;
  std::vector<std::string> flags;
};

// ANOVA iff every group has at least `min_n` values and passes Jarque-Bera
// at `alpha`.
GateResult normality_gate(const std::vector<std::vector<double>>& groups, double alpha = 0.05,
                          std::size_t min_n = 8);

struct ZScores {
  Matrix z;
  std::vector<double> means;
  std::vector<double> sds;
  std::vector<std::size_t> zero_sd_columns;
};

// (x - mean) / sd per column with population sd; zero-sd columns become 0.
ZScores zscore_columns(const Matrix& x);

// Upper-tail probabilities.
double f_sf(double f, double df1, double df2);
double chi2_sf(double x, double df);

}  // namespace cttstylo
