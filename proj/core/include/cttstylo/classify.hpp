#pragma once

// Five-classifier ensemble with stratified (optionally document-grouped)
// cross-validation and engine-by-engine accuracy matrices.

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cttstylo/matrix.hpp"

namespace cttstylo {

enum class ClassifierKind { NaiveBayes, LogisticRegression, LinearSvm, DecisionTree, RandomForest };

inline constexpr std::array<ClassifierKind, 5> kAllClassifiers{
    ClassifierKind::NaiveBayes, ClassifierKind::LogisticRegression, ClassifierKind::LinearSvm,
    ClassifierKind::DecisionTree, ClassifierKind::RandomForest};

std::string_view classifier_name(ClassifierKind k);

struct Hyperparameters {
  double nb_var_floor = 1e-9;
  double lr_lambda = 1.0;
  std::size_t lr_max_iter = 1000;
  double lr_tol = 1e-6;
  double svm_c = 1.0;
  std::size_t svm_epochs = 100;
  std::size_t dt_min_split = 2;
  std::size_t rf_trees = 100;

  // Throws Error when a value is outside its documented range.
  void validate() const;
};

class Model {
 public:
  virtual ~Model() = default;
  virtual int predict_one(std::span<const double> x) const = 0;
  std::vector<int> predict(const Matrix& x) const;
};

// Labels are class indices 0..K-1 and at least two must occur.
std::unique_ptr<Model> train(ClassifierKind kind, const Matrix& x, std::span<const int> y,
                             const Hyperparameters& hp = {}, std::uint64_t seed = 0);

enum class Grouping { Chunk, Document };

struct CvPlan {
  std::size_t folds = 5;
  std::uint64_t seed = 0;
  Grouping grouping = Grouping::Document;
};

// Stratified fold index per sample. In document mode all samples sharing a
// document id land in one fold; documents are stratified by their label.
std::vector<std::size_t> assign_folds(std::span<const int> y, std::span<const std::string> documents,
                                      const CvPlan& plan);

struct CvResult {
  std::vector<std::optional<double>> fold_accuracy;  // nullopt = skipped
  double mean = 0.0;
  std::vector<std::string> warnings;

  std::size_t evaluated() const;
};

// Throws Error when every fold had to be skipped.
CvResult cross_validate(ClassifierKind kind, const Matrix& x, std::span<const int> y,
                        std::span<const std::size_t> folds, std::size_t fold_count, const Hyperparameters& hp,
                        std::uint64_t seed);
CvResult cross_validate(ClassifierKind kind, const Matrix& x, std::span<const int> y,
                        std::span<const std::string> documents, const CvPlan& plan, const Hyperparameters& hp = {});

struct EnsembleResult {
  std::array<CvResult, 5> per_kind;
  double mean = 0.0;  // unweighted mean of the five per-kind means
  std::vector<std::size_t> folds;
};

EnsembleResult ensemble_accuracy(const Matrix& x, std::span<const int> y, std::span<const std::string> documents,
                                 const CvPlan& plan, const Hyperparameters& hp = {});

struct PairwiseMatrix {
  std::vector<std::string> engines;
  std::vector<std::vector<std::optional<double>>> accuracy;  // symmetric, empty diagonal
  std::vector<std::string> excluded;                         // undersized engines
  std::vector<std::string> notes;
};

// Per-cell seed as a function of the global seed and the two engine ids,
// independent of evaluation order.
std::uint64_t pair_seed(std::uint64_t global_seed, std::string_view a, std::string_view b);

// For every unordered engine pair: chi-square top-k on that pair's samples,
// then the ensemble. Samples are labelled by engine; CV runs at the sample
// level because each engine usually contributes a single document.
PairwiseMatrix pairwise_matrix(const FeatureMatrix& m, std::span<const std::string> feature_names,
                               const CvPlan& plan, const Hyperparameters& hp = {}, std::size_t top_k = 30);

}  // namespace cttstylo
