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
#include "hpcguard/matrix.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "hpcguard/error.hpp"

namespace hpcguard {

namespace {

// %.17g guarantees double -> text -> double is the identity.
std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      std::string tail = line.substr(start);
      if (!tail.empty() && tail.back() == '\r') tail.pop_back();
      fields.push_back(std::move(tail));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

}  // namespace

FeatureMatrix FeatureMatrix::make(std::vector<double> data,
                                  std::vector<std::string> feature_names,
                                  std::vector<std::string> row_ids,
                                  std::vector<std::optional<Label>> labels) {
  const std::size_t n = row_ids.size();
  const std::size_t d = feature_names.size();
  if (data.size() != n * d) throw DimensionMismatch(n * d, data.size());
  if (!labels.empty() && labels.size() != n) {
    throw DimensionMismatch(n, labels.size());
  }
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (!std::isfinite(data[i])) {
      throw InvalidSample("non-finite feature value at row " +
                          std::to_string(i / d) + ", col " +
                          std::to_string(i % d));
    }
  }
  FeatureMatrix m;
  m.data_ = std::move(data);
  m.feature_names_ = std::move(feature_names);
  m.row_ids_ = std::move(row_ids);
  m.labels_ = std::move(labels);
  return m;
}

FeatureMatrix FeatureMatrix::select_rows(
    std::span<const std::size_t> indices) const {
  const std::size_t d = cols();
  std::vector<double> data;
  data.reserve(indices.size() * d);
  std::vector<std::string> ids;
  ids.reserve(indices.size());
  std::vector<std::optional<Label>> labels;
  if (has_labels()) labels.reserve(indices.size());
  for (std::size_t idx : indices) {
    if (idx >= rows()) throw DimensionMismatch(rows(), idx);
    const auto r = row(idx);
    data.insert(data.end(), r.begin(), r.end());
    ids.push_back(row_ids_[idx]);
    if (has_labels()) labels.push_back(labels_[idx]);
  }
  return make(std::move(data), feature_names_, std::move(ids),
              std::move(labels));
}

std::string FeatureMatrix::to_csv() const {
  std::string out = "row_id";
  for (const auto& name : feature_names_) {
    out.push_back(',');
    out += name;
  }
  out += ",label\n";
  for (std::size_t i = 0; i < rows(); ++i) {
    out += row_ids_[i];
    for (std::size_t j = 0; j < cols(); ++j) {
      out.push_back(',');
      out += format_double(at(i, j));
    }
    out.push_back(',');
    if (has_labels() && labels_[i].has_value()) out += label_name(*labels_[i]);
    out.push_back('\n');
  }
  return out;
}

FeatureMatrix FeatureMatrix::from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;

  // Leading '#' lines carry provenance comments written by the tooling.
  do {
    if (!std::getline(in, line)) throw SchemaViolation(1, "missing header");
    ++line_no;
  } while (!line.empty() && line.front() == '#');
  auto header = split_line(line);
  if (header.size() < 2 || header.front() != "row_id" ||
      header.back() != "label") {
    throw SchemaViolation(line_no, "bad header");
  }
  std::vector<std::string> feature_names(header.begin() + 1, header.end() - 1);
  const std::size_t d = feature_names.size();

  std::vector<double> data;
  std::vector<std::string> row_ids;
  std::vector<std::optional<Label>> labels;
  bool any_label = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto fields = split_line(line);
    if (fields.size() != d + 2) {
      throw SchemaViolation(line_no, "wrong field count");
    }
    row_ids.push_back(fields.front());
    for (std::size_t j = 0; j < d; ++j) {
      const std::string& cell = fields[j + 1];
      double v = 0.0;
      const auto res = std::from_chars(cell.data(), cell.data() + cell.size(),
                                       v);
      if (res.ec != std::errc() || res.ptr != cell.data() + cell.size()) {
        throw SchemaViolation(line_no, "bad numeric cell");
      }
      data.push_back(v);
    }
    const std::string& label_cell = fields.back();
    if (label_cell.empty()) {
      labels.emplace_back(std::nullopt);
    } else if (label_cell == "benign") {
      labels.emplace_back(Label::kBenign);
      any_label = true;
    } else if (label_cell == "malign") {
      labels.emplace_back(Label::kMalign);
      any_label = true;
    } else {
      throw SchemaViolation(line_no, "unknown label: " + label_cell);
    }
  }
  if (!any_label) labels.clear();
  try {
    return make(std::move(data), std::move(feature_names), std::move(row_ids),
                std::move(labels));
  } catch (const InvalidSample& e) {
    throw SchemaViolation(0, e.what());
  }
}

}  // namespace hpcguard
