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
#ifndef HPCGUARD_MODEL_HPP_
#define HPCGUARD_MODEL_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hpcguard/elliptic.hpp"
#include "hpcguard/iforest.hpp"
#include "hpcguard/lof.hpp"
#include "hpcguard/matrix.hpp"
#include "hpcguard/ocsvm.hpp"
#include "hpcguard/svm.hpp"
#include "hpcguard/trace.hpp"

namespace hpcguard {

enum class ModelKind {
  kSvm,
  kOcSvm,
  kLof,
  kIsolationForest,
  kEllipticEnvelope,
};

std::string_view model_kind_name(ModelKind kind);
std::optional<ModelKind> model_kind_from_name(std::string_view name);

// True for the anomaly detectors (everything except the two-class SVM).
bool is_one_class(ModelKind kind);

// Per-kind training knobs; only the block matching `kind` is read.
struct ModelConfig {
  ModelKind kind = ModelKind::kSvm;
  SvmParams svm{};
  OcSvmParams ocsvm{};
  LofParams lof{};
  IforestParams iforest{};
  EllipticParams elliptic{};
};

// Uniform facade over the five classifiers. Decision scores are oriented so
// larger = more anomalous for every kind (SVM: +f toward Malign; OC-SVM: -f;
// LOF: score; isolation forest: score; elliptic: squared Mahalanobis) and a
// point is classified Malign iff score > decision_threshold.
struct TrainedModel {
  ModelKind kind = ModelKind::kSvm;
  std::map<std::string, double> hyperparams;
  std::variant<SvmFit, OcSvmFit, LofFit, IforestFit, EllipticFit> fit;
  double decision_threshold = 0.0;
  std::vector<std::string> feature_names;

  std::size_t input_dim() const;
  double decision_score(std::span<const double> q) const;
  std::vector<double> decision_scores(const FeatureMatrix& q) const;
  std::vector<Label> predict(const FeatureMatrix& q) const;
};

// Trains the classifier selected by config.kind; feature names are recorded
// from the matrix. Errors propagate from the per-kind trainers.
TrainedModel train_model(const FeatureMatrix& x, const ModelConfig& config);

// Single-document JSON serialization with exact numeric round-trip:
// {format_version, kind, hyperparams, fitted, threshold, feature_names}.
std::string model_to_json(const TrainedModel& model);
TrainedModel model_from_json(const std::string& text);  // SchemaViolation

void save_model(const TrainedModel& model, const std::string& path);
TrainedModel load_model(const std::string& path);  // IoError, SchemaViolation

}  // namespace hpcguard

#endif  // HPCGUARD_MODEL_HPP_
