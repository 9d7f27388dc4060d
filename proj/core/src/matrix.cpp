#include "cttstylo/matrix.hpp"

#include <algorithm>

#include "cttstylo/error.hpp"

namespace cttstylo {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) throw Error("Matrix: data size does not match shape");
}

std::vector<double> Matrix::column(std::size_t c) const {
  std::vector<double> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

Matrix Matrix::select_rows(std::span<const std::size_t> rows) const {
  Matrix out(rows.size(), cols_);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(rows[i] * cols_), cols_,
                out.data_.begin() + static_cast<std::ptrdiff_t>(i * cols_));
  }
  return out;
}

Matrix Matrix::select_cols(std::span<const std::size_t> cols) const {
  Matrix out(rows_, cols.size());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t j = 0; j < cols.size(); ++j) out(r, j) = (*this)(r, cols[j]);
  }
  return out;
}

std::size_t FeatureMatrix::feature_index(std::string_view name) const {
  const auto it = std::find(features.begin(), features.end(), name);
  return it == features.end() ? npos : static_cast<std::size_t>(it - features.begin());
}

FeatureMatrix FeatureMatrix::select_features(std::span<const std::string> names) const {
  std::vector<std::size_t> idx;
  idx.reserve(names.size());
  for (const auto& n : names) {
    const auto j = feature_index(n);
    if (j == npos) throw Error("unknown feature '" + n + "'");
    idx.push_back(j);
  }
  FeatureMatrix out;
  out.samples = samples;
  out.features.assign(names.begin(), names.end());
  out.values = values.select_cols(idx);
  return out;
}

FeatureMatrix FeatureMatrix::select_samples(std::span<const std::size_t> rows) const {
  FeatureMatrix out;
  out.features = features;
  for (auto r : rows) out.samples.push_back(samples[r]);
  out.values = values.select_rows(rows);
  return out;
}

}  // namespace cttstylo
