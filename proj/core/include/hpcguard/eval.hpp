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
#ifndef HPCGUARD_EVAL_HPP_
#define HPCGUARD_EVAL_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hpcguard/matrix.hpp"
#include "hpcguard/model.hpp"

namespace hpcguard {

// The three supervised dataset compositions plus the benign-train anomaly
// experiment.
enum class ScenarioKind {
  kBalanced,    // stratified split of both classes
  kMalignOnly,  // train on malign only; test = held-out malign + all benign
  kBenignOnly,  // train on benign only; test = held-out benign + all malign
  kSboUnsupervised,
};

std::string_view scenario_kind_name(ScenarioKind kind);
std::optional<ScenarioKind> scenario_kind_from_name(std::string_view name);

struct ScenarioSpec {
  ScenarioKind kind = ScenarioKind::kBalanced;
  double train_fraction = 0.8;  // must lie in (0, 1)
  std::uint64_t seed = 0;
};

// Malign is the positive class everywhere.
struct ConfusionMatrix {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t tn = 0;
  std::uint64_t fn = 0;

  std::uint64_t total() const { return tp + fp + tn + fn; }
  bool operator==(const ConfusionMatrix&) const = default;
};

struct EvalReport {
  std::string scenario;
  ModelKind model = ModelKind::kSvm;
  std::map<std::string, double> hyperparams;
  ConfusionMatrix confusion;
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double fpr = 0.0;
  std::uint64_t seed = 0;
  double wall_ms = 0.0;   // 0 unless timing was requested
  bool degenerate = false;  // some metric denominator was zero
};

struct SplitResult {
  FeatureMatrix train;
  FeatureMatrix test;
};

// Deterministic stratified split: rows of each class are shuffled with a
// seeded generator, the first round(train_fraction * n_class) go to the
// training side, and each side keeps ascending original row order. One-class
// scenarios hold out their class's test share and move the entire other
// class into the test side. Throws MissingLabels, SingleClass, ConfigError
// (SboUnsupervised does not split by fraction), InvalidHyperparam.
SplitResult split_scenario(const FeatureMatrix& x, const ScenarioSpec& spec);

// Splits, standardizes on training statistics, trains the configured model,
// and scores the test side. Balanced requires the two-class SVM; the
// one-class scenarios require an anomaly detector (ConfigError otherwise).
// wall_ms stays 0 unless `timing` is set, keeping reports byte-identical
// across reruns.
EvalReport run_supervised(const FeatureMatrix& x, const ScenarioSpec& spec,
                          const ModelConfig& config, bool timing = false);

// Benign-train anomaly experiment: rows group into benchmarks by the row-id
// prefix before '/', and every model trains and scores per benchmark
// (scenario "sbo/<benchmark>"). Throws LabelLeak if any training row is
// malign, MissingLabels, ConfigError when the benchmark sets differ or a
// two-class model is requested.
std::vector<EvalReport> run_sbo(const FeatureMatrix& train,
                                const FeatureMatrix& test,
                                const std::vector<ModelConfig>& models,
                                bool timing = false);

// ASCII confusion matrices + metric lines, one block per report.
std::string render_text(const std::vector<EvalReport>& reports);

// CSV with the fixed column set
// scenario,model,accuracy,precision,recall,f1,fpr,tp,fp,tn,fn,seed,wall_ms;
// reals are written with full round-trip precision (%.17g), and render_json
// mirrors the same fields.
std::string render_csv(const std::vector<EvalReport>& reports);
std::string render_json(const std::vector<EvalReport>& reports);

// Per-benchmark accuracy table (benchmark,model,accuracy) from "sbo/…"
// reports, ready for bar-chart plotting.
std::string render_benchmark_accuracy_csv(const std::vector<EvalReport>& reports);

// Inverse of render_csv / render_json; numeric fields round-trip exactly.
std::vector<EvalReport> parse_report_csv(const std::string& text);
std::vector<EvalReport> parse_report_json(const std::string& text);

}  // namespace hpcguard

#endif  // HPCGUARD_EVAL_HPP_
