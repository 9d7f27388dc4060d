#include "cttstylo/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "cttstylo/error.hpp"

namespace cttstylo {

double f_sf(double f, double df1, double df2) {
  if (!(f > 0.0)) return 1.0;
  if (std::isinf(f)) return 0.0;
  // P(F > f) = I_{df2 / (df2 + df1 f)}(df2/2, df1/2)
  return boost::math::ibeta(df2 / 2.0, df1 / 2.0, df2 / (df2 + df1 * f));
}

double chi2_sf(double x, double df) {
  if (!(x > 0.0)) return 1.0;
  if (std::isinf(x)) return 0.0;
  return boost::math::gamma_q(df / 2.0, x / 2.0);
}

std::vector<RankedFeature> chi_square_scores(const Matrix& x, std::span<const int> labels,
                                             std::span<const std::string> feature_names,
                                             std::span<const std::string> sample_ids) {
  if (labels.size() != x.rows()) throw Error("chi_square_scores: label count does not match rows");
  if (feature_names.size() != x.cols()) throw Error("chi_square_scores: name count does not match columns");
  if (x.rows() == 0) throw Error("chi_square_scores: empty matrix");
  const int classes = *std::max_element(labels.begin(), labels.end()) + 1;
  std::vector<std::size_t> class_n(static_cast<std::size_t>(classes), 0);
  for (int y : labels) {
    if (y < 0) throw Error("chi_square_scores: negative label");
    ++class_n[static_cast<std::size_t>(y)];
  }
  if (std::count_if(class_n.begin(), class_n.end(), [](std::size_t n) { return n > 0; }) < 2) {
    throw Error("chi_square_scores: need at least two groups");
  }
  const double n = static_cast<double>(x.rows());

  std::vector<RankedFeature> out;
  out.reserve(x.cols());
  std::vector<double> observed(static_cast<std::size_t>(classes));
  for (std::size_t j = 0; j < x.cols(); ++j) {
    std::fill(observed.begin(), observed.end(), 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < x.rows(); ++i) {
      const double v = x(i, j);
      if (v < 0.0) {
        throw Error("chi_square_scores: negative value in feature '" + feature_names[j] + "' at sample " +
                    (i < sample_ids.size() ? sample_ids[i] : std::to_string(i)));
      }
      observed[static_cast<std::size_t>(labels[i])] += v;
      total += v;
    }
    double chi2 = 0.0;
    if (total > 0.0) {
      for (std::size_t c = 0; c < observed.size(); ++c) {
        if (class_n[c] == 0) continue;
        const double expected = total * static_cast<double>(class_n[c]) / n;
        const double d = observed[c] - expected;
        chi2 += d * d / expected;
      }
    }
    out.push_back({feature_names[j], chi2});
  }
  std::sort(out.begin(), out.end(), [](const RankedFeature& a, const RankedFeature& b) {
    return a.chi2 != b.chi2 ? a.chi2 > b.chi2 : a.name < b.name;
  });
  return out;
}

std::vector<RankedFeature> chi_square_scores(const FeatureMatrix& m, std::span<const int> labels) {
  std::vector<std::string> ids;
  ids.reserve(m.samples.size());
  for (const auto& s : m.samples) ids.push_back(s.id);
  return chi_square_scores(m.values, labels, m.features, ids);
}

std::vector<std::string> select_top_k(std::span<const RankedFeature> ranked, std::size_t k) {
  std::vector<std::string> out;
  const std::size_t n = std::min(k, ranked.size());
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(ranked[i].name);
  return out;
}

namespace {

double mean_of(std::span<const double> xs) {
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

}  // namespace

TestResult anova_f(const std::vector<std::vector<double>>& groups) {
  if (groups.size() < 2) throw Error("anova_f: need at least two groups");
  std::size_t n = 0;
  double grand = 0.0;
  for (const auto& g : groups) {
    if (g.size() < 2) throw Error("anova_f: every group needs at least two observations");
    n += g.size();
    grand += std::accumulate(g.begin(), g.end(), 0.0);
  }
  grand /= static_cast<double>(n);
  double ssb = 0.0, ssw = 0.0;
  for (const auto& g : groups) {
    const double m = mean_of(g);
    ssb += static_cast<double>(g.size()) * (m - grand) * (m - grand);
    for (double v : g) ssw += (v - m) * (v - m);
  }
  if (ssw == 0.0) throw Error("anova_f: degenerate variance");
  const double df_between = static_cast<double>(groups.size() - 1);
  const double df_within = static_cast<double>(n - groups.size());
  TestResult r;
  r.stat = (ssb / df_between) / (ssw / df_within);
  r.p = f_sf(r.stat, df_between, df_within);
  return r;
}

TestResult kruskal_wallis_h(const std::vector<std::vector<double>>& groups) {
  if (groups.size() < 2) throw Error("kruskal_wallis_h: need at least two groups");
  struct Obs {
    double v;
    std::size_t g;
  };
  std::vector<Obs> all;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (groups[g].empty()) throw Error("kruskal_wallis_h: empty group");
    for (double v : groups[g]) all.push_back({v, g});
  }
  const std::size_t n = all.size();
  if (n < 3) throw Error("kruskal_wallis_h: need at least three observations");
  std::stable_sort(all.begin(), all.end(), [](const Obs& a, const Obs& b) { return a.v < b.v; });

  std::vector<double> rank_sum(groups.size(), 0.0);
  double tie_term = 0.0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && all[j].v == all[i].v) ++j;
    const double avg_rank = 0.5 * static_cast<double>(i + 1 + j);  // mean of ranks i+1..j
    const double t = static_cast<double>(j - i);
    tie_term += t * t * t - t;
    for (std::size_t k = i; k < j; ++k) rank_sum[all[k].g] += avg_rank;
    i = j;
  }
  TestResult r;
  const double nd = static_cast<double>(n);
  const double correction = 1.0 - tie_term / (nd * nd * nd - nd);
  if (correction <= 0.0) {
    r.stat = 0.0;
    r.p = 1.0;
    r.flags.push_back("all-tied");
    return r;
  }
  const double mean_rank = 0.5 * (nd + 1.0);
  double h = 0.0;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const double ng = static_cast<double>(groups[g].size());
    const double d = rank_sum[g] / ng - mean_rank;
    h += ng * d * d;
  }
  h *= 12.0 / (nd * (nd + 1.0));
  r.stat = h / correction;
  r.p = chi2_sf(r.stat, static_cast<double>(groups.size() - 1));
  return r;
}

JarqueBera jarque_bera(std::span<const double> xs) {
  JarqueBera jb;
  if (xs.size() < 2) {
    jb.degenerate = true;
    jb.p = 0.0;
    return jb;
  }
  const double n = static_cast<double>(xs.size());
  const double m = mean_of(xs);
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : xs) {
    const double d = v - m;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;
  if (m2 <= 0.0) {
    jb.degenerate = true;
    jb.p = 0.0;
    return jb;
  }
  const double skew = m3 / std::pow(m2, 1.5);
  const double kurt = m4 / (m2 * m2);
  jb.stat = n / 6.0 * (skew * skew + (kurt - 3.0) * (kurt - 3.0) / 4.0);
  jb.p = std::exp(-jb.stat / 2.0);  // chi-square(2) survival function
  return jb;
}

GateResult normality_gate(const std::vector<std::vector<double>>& groups, double alpha, std::size_t min_n) {
  GateResult r;
  bool all_pass = !groups.empty();
  for (const auto& g : groups) {
    if (g.size() < min_n) {
      if (std::find(r.flags.begin(), r.flags.end(), "small-sample") == r.flags.end()) {
        r.flags.emplace_back("small-sample");
      }
      all_pass = false;
    }
    auto jb = jarque_bera(g);
    if (jb.degenerate) {
      if (std::find(r.flags.begin(), r.flags.end(), "zero-variance") == r.flags.end()) {
        r.flags.emplace_back("zero-variance");
      }
      all_pass = false;
    } else if (jb.p < alpha) {
      all_pass = false;
    }
    r.per_group.push_back(jb);
  }
  r.decision = all_pass ? GateDecision::Anova : GateDecision::Kruskal;
  return r;
}

ZScores zscore_columns(const Matrix& x) {
  ZScores out;
  out.z = Matrix(x.rows(), x.cols());
  out.means.assign(x.cols(), 0.0);
  out.sds.assign(x.cols(), 0.0);
  if (x.rows() == 0) return out;
  const double n = static_cast<double>(x.rows());
  for (std::size_t j = 0; j < x.cols(); ++j) {
    double m = 0.0;
    for (std::size_t i = 0; i < x.rows(); ++i) m += x(i, j);
    m /= n;
    double var = 0.0;
    for (std::size_t i = 0; i < x.rows(); ++i) var += (x(i, j) - m) * (x(i, j) - m);
    const double sd = std::sqrt(var / n);
    out.means[j] = m;
    out.sds[j] = sd;
    if (sd <= 1e-12 * std::max(1.0, std::abs(m))) {
      out.zero_sd_columns.push_back(j);
      continue;
    }
    for (std::size_t i = 0; i < x.rows(); ++i) out.z(i, j) = (x(i, j) - m) / sd;
  }
  return out;
}

}  // namespace cttstylo
