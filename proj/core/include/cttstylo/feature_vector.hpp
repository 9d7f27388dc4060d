#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cttstylo/corpus.hpp"

namespace cttstylo {

// Named, ordered, non-negative feature values for one sample. Extractors
// return partial vectors that the caller concatenates.
struct FeatureVector {
  std::string sample_id;
  Group group = Group::Unlabeled;
  std::vector<std::string> names;
  std::vector<double> values;
  std::vector<std::string> flags;  // diagnostics such as "no-deps"

  void add(std::string name, double value) {
    names.push_back(std::move(name));
    values.push_back(value);
  }

  void append(const FeatureVector& other) {
    names.insert(names.end(), other.names.begin(), other.names.end());
    values.insert(values.end(), other.values.begin(), other.values.end());
    flags.insert(flags.end(), other.flags.begin(), other.flags.end());
  }

  std::optional<double> get(std::string_view name) const {
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (names[i] == name) return values[i];
    }
    return std::nullopt;
  }

  bool has_flag(std::string_view flag) const {
    for (const auto& f : flags) {
      if (f == flag) return true;
    }
    return false;
  }

  std::size_t size() const noexcept { return names.size(); }
};

}  // namespace cttstylo
