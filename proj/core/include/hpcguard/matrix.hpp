/*
 * Copyright 2026 The hpcguard Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#ifndef HPCGUARD_MATRIX_HPP_
#define HPCGUARD_MATRIX_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hpcguard/trace.hpp"

namespace hpcguard {

// Row-major n x d feature matrix with optional per-row labels. Construction
// validates that every entry is finite and that labels / row_ids /
// feature_names lengths are consistent with the data shape.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;

  // data.size() must equal row_ids.size() * feature_names.size(); labels
  // must be empty or row-aligned (DimensionMismatch otherwise). Any NaN or
  // infinite entry raises InvalidSample.
  static FeatureMatrix make(std::vector<double> data,
                            std::vector<std::string> feature_names,
                            std::vector<std::string> row_ids,
                            std::vector<std::optional<Label>> labels);

  std::size_t rows() const { return row_ids_.size(); }
  std::size_t cols() const { return feature_names_.size(); }

  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols(), cols()};
  }
  double at(std::size_t i, std::size_t j) const { return data_[i * cols() + j]; }
  const std::vector<double>& data() const { return data_; }
  const std::vector<std::string>& feature_names() const {
    return feature_names_;
  }
  const std::vector<std::string>& row_ids() const { return row_ids_; }
  const std::vector<std::optional<Label>>& labels() const { return labels_; }
  bool has_labels() const { return !labels_.empty(); }

  // Sub-matrix of the given row indices (order preserved, labels carried).
  FeatureMatrix select_rows(std::span<const std::size_t> indices) const;

  // CSV with header feature_names + "label"; unlabeled rows leave the label
  // cell empty. Values use 17-significant-digit formatting so a write/parse
  // cycle is exact. from_csv skips leading '#' provenance comment lines.
  std::string to_csv() const;
  static FeatureMatrix from_csv(const std::string& text);

  friend bool operator==(const FeatureMatrix&, const FeatureMatrix&) = default;

 private:
  std::vector<double> data_;
  std::vector<std::string> feature_names_;
  std::vector<std::string> row_ids_;
  std::vector<std::optional<Label>> labels_;
};

}  // namespace hpcguard

#endif  // HPCGUARD_MATRIX_HPP_
