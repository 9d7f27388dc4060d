#include "cttstylo/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>

#include "cttstylo/error.hpp"
#include "cttstylo/rng.hpp"
#include "cttstylo/stats.hpp"
#include "cttstylo/text.hpp"

namespace cttstylo {

std::string_view classifier_name(ClassifierKind k) {
  switch (k) {
    case ClassifierKind::NaiveBayes: return "naive_bayes";
    case ClassifierKind::LogisticRegression: return "logistic_regression";
    case ClassifierKind::LinearSvm: return "linear_svm";
    case ClassifierKind::DecisionTree: return "decision_tree";
    case ClassifierKind::RandomForest: return "random_forest";
  }
  return "";
}

void Hyperparameters::validate() const {
  if (!(nb_var_floor > 0.0)) throw Error("hyperparameters: nb_var_floor must be > 0");
  if (!(lr_lambda >= 0.0)) throw Error("hyperparameters: lr_lambda must be >= 0");
  if (lr_max_iter < 1) throw Error("hyperparameters: lr_max_iter must be >= 1");
  if (!(lr_tol > 0.0)) throw Error("hyperparameters: lr_tol must be > 0");
  if (!(svm_c > 0.0)) throw Error("hyperparameters: svm_c must be > 0");
  if (svm_epochs < 1) throw Error("hyperparameters: svm_epochs must be >= 1");
  if (dt_min_split < 2) throw Error("hyperparameters: dt_min_split must be >= 2");
  if (rf_trees < 1) throw Error("hyperparameters: rf_trees must be >= 1");
}

std::vector<int> Model::predict(const Matrix& x) const {
  std::vector<int> out(x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i) out[i] = predict_one(x.row(i));
  return out;
}

namespace {

int class_count(std::span<const int> y) { return y.empty() ? 0 : *std::max_element(y.begin(), y.end()) + 1; }

int argmax_lowest(std::span<const double> scores) {
  int best = 0;
  for (std::size_t k = 1; k < scores.size(); ++k) {
    if (scores[k] > scores[static_cast<std::size_t>(best)]) best = static_cast<int>(k);
  }
  return best;
}

template <typename Count>
int majority_lowest(std::span<const Count> counts) {
  int best = 0;
  for (std::size_t k = 1; k < counts.size(); ++k) {
    if (counts[k] > counts[static_cast<std::size_t>(best)]) best = static_cast<int>(k);
  }
  return best;
}

// --- Gaussian naive Bayes ----------------------------------------------------

class NaiveBayes final : public Model {
 public:
  NaiveBayes(const Matrix& x, std::span<const int> y, double var_floor) {
    classes_ = class_count(y);
    const std::size_t d = x.cols();
    mean_ = Matrix(static_cast<std::size_t>(classes_), d);
    var_ = Matrix(static_cast<std::size_t>(classes_), d);
    log_prior_.assign(static_cast<std::size_t>(classes_), -std::numeric_limits<double>::infinity());
    std::vector<std::size_t> n(static_cast<std::size_t>(classes_), 0);
    for (std::size_t i = 0; i < x.rows(); ++i) {
      const auto c = static_cast<std::size_t>(y[i]);
      ++n[c];
      for (std::size_t j = 0; j < d; ++j) mean_(c, j) += x(i, j);
    }
    for (std::size_t c = 0; c < n.size(); ++c) {
      if (n[c] == 0) continue;
      for (std::size_t j = 0; j < d; ++j) mean_(c, j) /= static_cast<double>(n[c]);
      log_prior_[c] = std::log(static_cast<double>(n[c]) / static_cast<double>(x.rows()));
    }
    for (std::size_t i = 0; i < x.rows(); ++i) {
      const auto c = static_cast<std::size_t>(y[i]);
      for (std::size_t j = 0; j < d; ++j) {
        const double dv = x(i, j) - mean_(c, j);
        var_(c, j) += dv * dv;
      }
    }
    for (std::size_t c = 0; c < n.size(); ++c) {
      for (std::size_t j = 0; j < d; ++j) {
        var_(c, j) = n[c] ? std::max(var_(c, j) / static_cast<double>(n[c]), var_floor) : var_floor;
      }
    }
  }

  int predict_one(std::span<const double> x) const override {
    std::vector<double> score(log_prior_);
    for (std::size_t c = 0; c < score.size(); ++c) {
      if (std::isinf(score[c])) continue;
      double ll = 0.0;
      for (std::size_t j = 0; j < x.size(); ++j) {
        const double v = var_(c, j);
        const double dv = x[j] - mean_(c, j);
        ll -= 0.5 * (std::log(2.0 * std::numbers::pi * v) + dv * dv / v);
      }
      score[c] += ll;
    }
    return argmax_lowest(score);
  }

 private:
  int classes_ = 0;
  Matrix mean_, var_;
  std::vector<double> log_prior_;
};

// --- linear models -----------------------------------------------------------

struct Standardizer {
  std::vector<double> mean, scale;

  explicit Standardizer(const Matrix& x) {
    const auto z = zscore_columns(x);
    mean = z.means;
    scale = z.sds;
    for (auto& s : scale) {
      if (!(s > 1e-12)) s = 1.0;
    }
  }

  void apply(std::span<const double> in, std::span<double> out) const {
    for (std::size_t j = 0; j < in.size(); ++j) out[j] = (in[j] - mean[j]) / scale[j];
  }

  Matrix apply(const Matrix& x) const {
    Matrix out(x.rows(), x.cols());
    for (std::size_t i = 0; i < x.rows(); ++i) apply(x.row(i), out.row(i));
    return out;
  }
};

struct LinearScore {
  std::vector<double> w;
  double b = 0.0;

  double operator()(std::span<const double> x) const {
    double s = b;
    for (std::size_t j = 0; j < x.size(); ++j) s += w[j] * x[j];
    return s;
  }
};

// One-vs-rest wrapper shared by the two linear models.
class LinearOvr final : public Model {
 public:
  LinearOvr(Standardizer st, std::vector<LinearScore> scorers) : st_(std::move(st)), scorers_(std::move(scorers)) {}

  int predict_one(std::span<const double> x) const override {
    std::vector<double> z(x.size());
    st_.apply(x, z);
    if (scorers_.size() == 1) return scorers_.front()(z) > 0.0 ? 1 : 0;
    std::vector<double> s(scorers_.size());
    for (std::size_t k = 0; k < scorers_.size(); ++k) s[k] = scorers_[k](z);
    return argmax_lowest(s);
  }

 private:
  Standardizer st_;
  std::vector<LinearScore> scorers_;
};

// Full-batch gradient descent on mean log-loss + lambda/(2n) ||w||^2 with a
// step of 1/L, L bounding the Hessian.
LinearScore fit_logistic(const Matrix& z, std::span<const double> sign, const Hyperparameters& hp) {
  const std::size_t n = z.rows(), d = z.cols();
  const double nd = static_cast<double>(n);
  double sq = 0.0;
  for (double v : z.data()) sq += v * v;
  const double lipschitz = 0.25 * (sq + nd) / nd + hp.lr_lambda / nd;
  const double step = 1.0 / lipschitz;

  LinearScore m{std::vector<double>(d, 0.0), 0.0};
  std::vector<double> grad(d);
  for (std::size_t it = 0; it < hp.lr_max_iter; ++it) {
    std::fill(grad.begin(), grad.end(), 0.0);
    double grad_b = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto row = z.row(i);
      const double margin = sign[i] * m(row);
      // d/dm log(1 + e^-m) = -1 / (1 + e^m)
      const double g = -sign[i] / (1.0 + std::exp(margin));
      for (std::size_t j = 0; j < d; ++j) grad[j] += g * row[j];
      grad_b += g;
    }
    double norm = std::abs(grad_b / nd);
    for (std::size_t j = 0; j < d; ++j) {
      grad[j] = grad[j] / nd + hp.lr_lambda / nd * m.w[j];
      norm = std::max(norm, std::abs(grad[j]));
    }
    if (norm < hp.lr_tol) break;
    for (std::size_t j = 0; j < d; ++j) m.w[j] -= step * grad[j];
    m.b -= step * grad_b / nd;
  }
  return m;
}

// Pegasos: stochastic subgradient descent on lambda/2 ||w||^2 + mean hinge,
// lambda = 1/(C n), seeded shuffling per epoch, with the bias as an extra
// constant feature. Returns the average of the second-half iterates.
LinearScore fit_svm(const Matrix& z, std::span<const double> sign, const Hyperparameters& hp, std::uint64_t seed) {
  const std::size_t n = z.rows(), d = z.cols();
  const double lambda = 1.0 / (hp.svm_c * static_cast<double>(n));
  const double radius = 1.0 / std::sqrt(lambda);
  std::vector<double> w(d + 1, 0.0), avg(d + 1, 0.0);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  const std::size_t total = hp.svm_epochs * n;
  const std::size_t average_from = total / 2;
  std::size_t averaged = 0;
  std::size_t t = 0;
  for (std::size_t epoch = 0; epoch < hp.svm_epochs; ++epoch) {
    rng.shuffle(std::span<std::size_t>(order));
    for (std::size_t i : order) {
      ++t;
      const double eta = 1.0 / (lambda * static_cast<double>(t));
      const auto row = z.row(i);
      double score = w[d];
      for (std::size_t j = 0; j < d; ++j) score += w[j] * row[j];
      const double shrink = 1.0 - eta * lambda;
      for (auto& v : w) v *= shrink;
      if (sign[i] * score < 1.0) {
        for (std::size_t j = 0; j < d; ++j) w[j] += eta * sign[i] * row[j];
        w[d] += eta * sign[i];
      }
      double norm = 0.0;
      for (double v : w) norm += v * v;
      norm = std::sqrt(norm);
      if (norm > radius) {
        const double f = radius / norm;
        for (auto& v : w) v *= f;
      }
      if (t > average_from) {
        ++averaged;
        for (std::size_t j = 0; j <= d; ++j) avg[j] += (w[j] - avg[j]) / static_cast<double>(averaged);
      }
    }
  }
  return LinearScore{std::vector<double>(avg.begin(), avg.begin() + static_cast<std::ptrdiff_t>(d)), avg[d]};
}

template <typename Fit>
std::unique_ptr<Model> train_ovr(const Matrix& x, std::span<const int> y, Fit&& fit) {
  Standardizer st(x);
  const Matrix z = st.apply(x);
  const int k = class_count(y);
  std::vector<LinearScore> scorers;
  std::vector<double> sign(y.size());
  const int first = k == 2 ? 1 : 0;
  for (int c = first; c < k; ++c) {
    for (std::size_t i = 0; i < y.size(); ++i) sign[i] = y[i] == c ? 1.0 : -1.0;
    scorers.push_back(fit(z, sign, static_cast<std::uint64_t>(c)));
  }
  return std::make_unique<LinearOvr>(std::move(st), std::move(scorers));
}

// --- CART --------------------------------------------------------------------

struct TreeNode {
  int feature = -1;  // -1 = leaf
  double threshold = 0.0;
  int left = -1, right = -1;
  int label = 0;
};

class TreeBuilder {
 public:
  TreeBuilder(const Matrix& x, std::span<const int> y, int classes, std::size_t min_split, std::size_t max_features,
              Rng* rng)
      : x_(x), y_(y), classes_(classes), min_split_(min_split), max_features_(max_features), rng_(rng) {}

  std::vector<TreeNode> build(std::vector<std::size_t> rows) {
    nodes_.clear();
    grow(std::move(rows));
    return std::move(nodes_);
  }

 private:
  struct Split {
    int feature = -1;
    double threshold = 0.0;
    double impurity = std::numeric_limits<double>::infinity();
  };

  static double gini(std::span<const std::size_t> counts, std::size_t n) {
    if (n == 0) return 0.0;
    double s = 1.0;
    for (auto c : counts) {
      const double p = static_cast<double>(c) / static_cast<double>(n);
      s -= p * p;
    }
    return s;
  }

  // Best threshold on one feature; updates `best` only on strict improvement
  // so earlier (lower) features and thresholds win ties.
  void evaluate(std::size_t feature, std::vector<std::size_t>& rows, Split& best, bool& any_valid) const {
    std::sort(rows.begin(), rows.end(), [&](std::size_t a, std::size_t b) {
      const double va = x_(a, feature), vb = x_(b, feature);
      return va != vb ? va < vb : a < b;
    });
    const std::size_t n = rows.size();
    std::vector<std::size_t> left(static_cast<std::size_t>(classes_), 0), right(static_cast<std::size_t>(classes_), 0);
    for (auto r : rows) ++right[static_cast<std::size_t>(y_[r])];
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const auto c = static_cast<std::size_t>(y_[rows[i]]);
      ++left[c];
      --right[c];
      const double a = x_(rows[i], feature), b = x_(rows[i + 1], feature);
      if (a == b) continue;
      any_valid = true;
      const std::size_t nl = i + 1, nr = n - nl;
      const double imp = (static_cast<double>(nl) * gini(left, nl) + static_cast<double>(nr) * gini(right, nr)) /
                         static_cast<double>(n);
      if (imp < best.impurity) {
        double thr = a + (b - a) / 2.0;
        if (!(thr < b)) thr = a;
        best = {static_cast<int>(feature), thr, imp};
      }
    }
  }

  int grow(std::vector<std::size_t> rows) {
    const int id = static_cast<int>(nodes_.size());
    nodes_.emplace_back();
    std::vector<std::size_t> counts(static_cast<std::size_t>(classes_), 0);
    for (auto r : rows) ++counts[static_cast<std::size_t>(y_[r])];
    nodes_[static_cast<std::size_t>(id)].label = majority_lowest<std::size_t>(counts);
    const bool pure = std::count_if(counts.begin(), counts.end(), [](std::size_t c) { return c > 0; }) <= 1;
    if (pure || rows.size() < min_split_) return id;

    const std::size_t d = x_.cols();
    Split best;
    bool any_valid = false;
    std::vector<std::size_t> work = rows;
    if (max_features_ >= d || !rng_) {
      for (std::size_t j = 0; j < d; ++j) evaluate(j, work, best, any_valid);
    } else {
      std::vector<std::size_t> order(d);
      std::iota(order.begin(), order.end(), 0);
      rng_->shuffle(std::span<std::size_t>(order));
      // Draw at least max_features candidates, and keep drawing until one
      // of them admits a split.
      std::size_t take = 0;
      while (take < d && (take < max_features_ || !any_valid)) {
        bool dummy = false;
        Split probe;
        evaluate(order[take], work, probe, dummy);
        any_valid = any_valid || dummy;
        ++take;
      }
      std::vector<std::size_t> chosen(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(take));
      std::sort(chosen.begin(), chosen.end());
      any_valid = false;
      for (auto j : chosen) evaluate(j, work, best, any_valid);
    }
    if (!any_valid || best.feature < 0) return id;

    std::vector<std::size_t> lrows, rrows;
    for (auto r : rows) (x_(r, static_cast<std::size_t>(best.feature)) <= best.threshold ? lrows : rrows).push_back(r);
    rows.clear();
    rows.shrink_to_fit();
    nodes_[static_cast<std::size_t>(id)].feature = best.feature;
    nodes_[static_cast<std::size_t>(id)].threshold = best.threshold;
    const int l = grow(std::move(lrows));
    nodes_[static_cast<std::size_t>(id)].left = l;
    const int r = grow(std::move(rrows));
    nodes_[static_cast<std::size_t>(id)].right = r;
    return id;
  }

  const Matrix& x_;
  std::span<const int> y_;
  int classes_;
  std::size_t min_split_;
  std::size_t max_features_;
  Rng* rng_;
  std::vector<TreeNode> nodes_;
};

int tree_predict(const std::vector<TreeNode>& nodes, std::span<const double> x) {
  std::size_t i = 0;
  while (nodes[i].feature >= 0) {
    i = static_cast<std::size_t>(x[static_cast<std::size_t>(nodes[i].feature)] <= nodes[i].threshold ? nodes[i].left
                                                                                                       : nodes[i].right);
  }
  return nodes[i].label;
}

class DecisionTree final : public Model {
 public:
  explicit DecisionTree(std::vector<TreeNode> nodes) : nodes_(std::move(nodes)) {}
  int predict_one(std::span<const double> x) const override { return tree_predict(nodes_, x); }

 private:
  std::vector<TreeNode> nodes_;
};

class RandomForest final : public Model {
 public:
  RandomForest(std::vector<std::vector<TreeNode>> trees, int classes) : trees_(std::move(trees)), classes_(classes) {}

  int predict_one(std::span<const double> x) const override {
    std::vector<std::size_t> votes(static_cast<std::size_t>(classes_), 0);
    for (const auto& t : trees_) ++votes[static_cast<std::size_t>(tree_predict(t, x))];
    return majority_lowest<std::size_t>(votes);
  }

 private:
  std::vector<std::vector<TreeNode>> trees_;
  int classes_;
};

}  // namespace

std::unique_ptr<Model> train(ClassifierKind kind, const Matrix& x, std::span<const int> y, const Hyperparameters& hp,
                             std::uint64_t seed) {
  if (x.rows() != y.size()) throw Error("train: row count does not match label count");
  if (x.rows() == 0) throw Error("train: empty training set");
  for (int v : y) {
    if (v < 0) throw Error("train: labels must be non-negative class indices");
  }
  std::vector<bool> seen(static_cast<std::size_t>(class_count(y)), false);
  for (int v : y) seen[static_cast<std::size_t>(v)] = true;
  if (std::count(seen.begin(), seen.end(), true) < 2) throw Error("train: single-class training set");

  switch (kind) {
    case ClassifierKind::NaiveBayes:
      return std::make_unique<NaiveBayes>(x, y, hp.nb_var_floor);
    case ClassifierKind::LogisticRegression:
      return train_ovr(x, y, [&](const Matrix& z, std::span<const double> s, std::uint64_t) {
        return fit_logistic(z, s, hp);
      });
    case ClassifierKind::LinearSvm:
      return train_ovr(x, y, [&](const Matrix& z, std::span<const double> s, std::uint64_t cls) {
        return fit_svm(z, s, hp, derive_seed(seed, cls));
      });
    case ClassifierKind::DecisionTree: {
      std::vector<std::size_t> rows(x.rows());
      std::iota(rows.begin(), rows.end(), 0);
      TreeBuilder builder(x, y, class_count(y), hp.dt_min_split, x.cols(), nullptr);
      return std::make_unique<DecisionTree>(builder.build(std::move(rows)));
    }
    case ClassifierKind::RandomForest: {
      const std::size_t m = std::max<std::size_t>(1, static_cast<std::size_t>(std::sqrt(static_cast<double>(x.cols()))));
      std::vector<std::vector<TreeNode>> trees;
      trees.reserve(hp.rf_trees);
      for (std::size_t t = 0; t < hp.rf_trees; ++t) {
        Rng rng(derive_seed(seed, t));
        std::vector<std::size_t> rows(x.rows());
        for (auto& r : rows) r = rng.index(x.rows());
        TreeBuilder builder(x, y, class_count(y), hp.dt_min_split, m, &rng);
        trees.push_back(builder.build(std::move(rows)));
      }
      return std::make_unique<RandomForest>(std::move(trees), class_count(y));
    }
  }
  throw Error("train: unknown classifier kind");
}

// --- cross-validation --------------------------------------------------------

std::vector<std::size_t> assign_folds(std::span<const int> y, std::span<const std::string> documents,
                                      const CvPlan& plan) {
  if (plan.folds < 2) throw Error("cv: folds must be >= 2");
  const std::size_t n = y.size();
  std::vector<std::size_t> fold(n, 0);
  Rng rng(plan.seed);
  const int k = class_count(y);

  if (plan.grouping == Grouping::Chunk || documents.empty()) {
    std::size_t next = 0;
    for (int c = 0; c < k; ++c) {
      std::vector<std::size_t> idx;
      for (std::size_t i = 0; i < n; ++i) {
        if (y[i] == c) idx.push_back(i);
      }
      rng.shuffle(std::span<std::size_t>(idx));
      for (auto i : idx) fold[i] = next++ % plan.folds;
    }
    return fold;
  }

  if (documents.size() != n) throw Error("cv: document ids must align with samples");
  // Documents in first-appearance order, labelled by their majority class.
  std::map<std::string, std::size_t> doc_index;
  std::vector<std::vector<std::size_t>> doc_rows;
  for (std::size_t i = 0; i < n; ++i) {
    const auto [it, inserted] = doc_index.emplace(documents[i], doc_rows.size());
    if (inserted) doc_rows.emplace_back();
    doc_rows[it->second].push_back(i);
  }
  std::vector<int> doc_label(doc_rows.size());
  for (std::size_t d = 0; d < doc_rows.size(); ++d) {
    std::vector<std::size_t> counts(static_cast<std::size_t>(k), 0);
    for (auto i : doc_rows[d]) ++counts[static_cast<std::size_t>(y[i])];
    doc_label[d] = majority_lowest<std::size_t>(counts);
  }
  std::vector<std::size_t> fold_load(plan.folds, 0);
  for (int c = 0; c < k; ++c) {
    std::vector<std::size_t> docs;
    for (std::size_t d = 0; d < doc_rows.size(); ++d) {
      if (doc_label[d] == c) docs.push_back(d);
    }
    rng.shuffle(std::span<std::size_t>(docs));
    std::stable_sort(docs.begin(), docs.end(),
                     [&](std::size_t a, std::size_t b) { return doc_rows[a].size() > doc_rows[b].size(); });
    std::vector<std::size_t> class_load(plan.folds, 0);
    for (auto d : docs) {
      std::size_t best = 0;
      for (std::size_t f = 1; f < plan.folds; ++f) {
        if (class_load[f] < class_load[best] ||
            (class_load[f] == class_load[best] && fold_load[f] < fold_load[best])) {
          best = f;
        }
      }
      class_load[best] += doc_rows[d].size();
      fold_load[best] += doc_rows[d].size();
      for (auto i : doc_rows[d]) fold[i] = best;
    }
  }
  return fold;
}

std::size_t CvResult::evaluated() const {
  return static_cast<std::size_t>(
      std::count_if(fold_accuracy.begin(), fold_accuracy.end(), [](const auto& a) { return a.has_value(); }));
}

namespace {

CvResult cross_validate_impl(ClassifierKind kind, const Matrix& x, std::span<const int> y,
                             std::span<const std::size_t> folds, std::size_t fold_count, const Hyperparameters& hp,
                             std::uint64_t seed, bool grouped) {
  if (folds.size() != y.size() || x.rows() != y.size()) throw Error("cv: inputs are not aligned");
  CvResult r;
  double sum = 0.0;
  for (std::size_t f = 0; f < fold_count; ++f) {
    std::vector<std::size_t> tr, te;
    for (std::size_t i = 0; i < y.size(); ++i) (folds[i] == f ? te : tr).push_back(i);
    std::vector<int> ytr, yte;
    for (auto i : tr) ytr.push_back(y[i]);
    for (auto i : te) yte.push_back(y[i]);
    const auto distinct = [](std::vector<int> v) {
      std::sort(v.begin(), v.end());
      return static_cast<std::size_t>(std::unique(v.begin(), v.end()) - v.begin());
    };
    if (te.empty()) {
      r.warnings.push_back("fold " + std::to_string(f) + ": empty, skipped");
      r.fold_accuracy.emplace_back();
      continue;
    }
    if (distinct(ytr) < 2) {
      r.warnings.push_back("fold " + std::to_string(f) + ": training part has a single class, skipped");
      r.fold_accuracy.emplace_back();
      continue;
    }
    if (grouped && distinct(yte) < 2) {
      r.warnings.push_back("fold " + std::to_string(f) + ": held-out part has a single class, skipped");
      r.fold_accuracy.emplace_back();
      continue;
    }
    const auto model = train(kind, x.select_rows(tr), ytr, hp, derive_seed(seed, f));
    const auto pred = model->predict(x.select_rows(te));
    std::size_t correct = 0;
    for (std::size_t i = 0; i < pred.size(); ++i) correct += pred[i] == yte[i];
    const double acc = static_cast<double>(correct) / static_cast<double>(pred.size());
    r.fold_accuracy.emplace_back(acc);
    sum += acc;
  }
  if (r.evaluated() == 0) throw Error("cv: every fold was skipped");
  r.mean = sum / static_cast<double>(r.evaluated());
  return r;
}

}  // namespace

CvResult cross_validate(ClassifierKind kind, const Matrix& x, std::span<const int> y,
                        std::span<const std::size_t> folds, std::size_t fold_count, const Hyperparameters& hp,
                        std::uint64_t seed) {
  return cross_validate_impl(kind, x, y, folds, fold_count, hp, seed, false);
}

CvResult cross_validate(ClassifierKind kind, const Matrix& x, std::span<const int> y,
                        std::span<const std::string> documents, const CvPlan& plan, const Hyperparameters& hp) {
  const auto folds = assign_folds(y, documents, plan);
  return cross_validate_impl(kind, x, y, folds, plan.folds, hp, derive_seed(plan.seed, 1000),
                             plan.grouping == Grouping::Document && !documents.empty());
}

EnsembleResult ensemble_accuracy(const Matrix& x, std::span<const int> y, std::span<const std::string> documents,
                                 const CvPlan& plan, const Hyperparameters& hp) {
  hp.validate();
  EnsembleResult r;
  r.folds = assign_folds(y, documents, plan);
  const bool grouped = plan.grouping == Grouping::Document && !documents.empty();
  double sum = 0.0;
  for (std::size_t k = 0; k < kAllClassifiers.size(); ++k) {
    r.per_kind[k] = cross_validate_impl(kAllClassifiers[k], x, y, r.folds, plan.folds, hp,
                                        derive_seed(plan.seed, 2000 + k), grouped);
    sum += r.per_kind[k].mean;
  }
  r.mean = sum / static_cast<double>(kAllClassifiers.size());
  return r;
}

std::uint64_t pair_seed(std::uint64_t global_seed, std::string_view a, std::string_view b) {
  if (b < a) std::swap(a, b);
  std::string key(a);
  key.push_back('\x1f');
  key += b;
  return splitmix64(text::fnv1a64(key, splitmix64(global_seed)));
}

PairwiseMatrix pairwise_matrix(const FeatureMatrix& m, std::span<const std::string> feature_names,
                               const CvPlan& plan, const Hyperparameters& hp, std::size_t top_k) {
  PairwiseMatrix out;
  const FeatureMatrix sub = m.select_features(feature_names);
  std::map<std::string, std::vector<std::size_t>> by_engine;
  for (std::size_t i = 0; i < m.samples.size(); ++i) {
    const auto& s = m.samples[i];
    by_engine[s.engine.empty() ? s.document : s.engine].push_back(i);
  }
  for (const auto& [engine, rows] : by_engine) {
    if (rows.size() < 2 * plan.folds) {
      out.excluded.push_back(engine);
      out.notes.push_back("engine " + engine + " excluded: " + std::to_string(rows.size()) + " samples < " +
                          std::to_string(2 * plan.folds));
    } else {
      out.engines.push_back(engine);
    }
  }
  if (out.engines.size() < 2) throw Error("pairwise_matrix: need at least two engines with enough samples");
  const std::size_t e = out.engines.size();
  out.accuracy.assign(e, std::vector<std::optional<double>>(e));
  for (std::size_t i = 0; i < e; ++i) {
    for (std::size_t j = i + 1; j < e; ++j) {
      std::vector<std::size_t> rows = by_engine[out.engines[i]];
      const auto& rj = by_engine[out.engines[j]];
      rows.insert(rows.end(), rj.begin(), rj.end());
      std::vector<int> y;
      for (std::size_t k = 0; k < rows.size(); ++k) y.push_back(k < by_engine[out.engines[i]].size() ? 0 : 1);
      const FeatureMatrix pair = sub.select_samples(rows);
      try {
        const auto ranked = chi_square_scores(pair, y);
        const auto top = select_top_k(ranked, top_k);
        const FeatureMatrix sel = pair.select_features(top);
        CvPlan cell{plan.folds, pair_seed(plan.seed, out.engines[i], out.engines[j]), Grouping::Chunk};
        const auto res = ensemble_accuracy(sel.values, y, {}, cell, hp);
        out.accuracy[i][j] = out.accuracy[j][i] = res.mean;
      } catch (const Error& err) {
        out.notes.push_back(out.engines[i] + "-" + out.engines[j] + ": " + err.what());
      }
    }
  }
  return out;
}

}  // namespace cttstylo
