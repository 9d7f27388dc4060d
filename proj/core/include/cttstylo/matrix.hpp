#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "cttstylo/corpus.hpp"

namespace cttstylo {

// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  // `data` is row-major with rows * cols entries.
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::vector<double> column(std::size_t c) const;

  Matrix select_rows(std::span<const std::size_t> rows) const;
  Matrix select_cols(std::span<const std::size_t> cols) const;

  const std::vector<double>& data() const noexcept { return data_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct SampleInfo {
  std::string id;
  std::string document;
  std::string engine;
  Group group = Group::Unlabeled;
  std::size_t tokens = 0;
  bool undersized = false;
};

// Rows are samples, columns named features.
struct FeatureMatrix {
  std::vector<SampleInfo> samples;
  std::vector<std::string> features;
  Matrix values;

  std::size_t feature_index(std::string_view name) const;  // npos if absent
  FeatureMatrix select_features(std::span<const std::string> names) const;
  FeatureMatrix select_samples(std::span<const std::size_t> rows) const;
};

inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

}  // namespace cttstylo
