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
#include "hpcguard/eval.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "hpcguard/error.hpp"
#include "hpcguard/features.hpp"
#include "hpcguard/rng.hpp"

namespace hpcguard {
namespace {

using nlohmann::json;

std::string fmt_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Fisher-Yates with our deterministic generator.
void shuffle_indices(std::vector<std::size_t>& idx, Rng& rng) {
  for (std::size_t i = 0; i + 1 < idx.size(); ++i) {
    const std::size_t j =
        i + static_cast<std::size_t>(
                rng.uniform_int(static_cast<std::uint64_t>(idx.size() - i)));
    std::swap(idx[i], idx[j]);
  }
}

struct ClassIndices {
  std::vector<std::size_t> benign;
  std::vector<std::size_t> malign;
};

// Fully-resolved labels; throws MissingLabels when absent or partial.
std::vector<Label> require_labels(const FeatureMatrix& x, const char* what) {
  if (!x.has_labels()) {
    throw MissingLabels(std::string(what) + " needs labeled rows");
  }
  std::vector<Label> labels;
  labels.reserve(x.rows());
  for (std::size_t i = 0; i < x.labels().size(); ++i) {
    const auto& l = x.labels()[i];
    if (!l.has_value()) {
      throw MissingLabels(std::string(what) + ": row " + std::to_string(i) +
                          " is unlabeled");
    }
    labels.push_back(*l);
  }
  return labels;
}

ClassIndices partition_by_class(const FeatureMatrix& x) {
  const std::vector<Label> labels = require_labels(x, "scenario split");
  ClassIndices out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    (labels[i] == Label::kMalign ? out.malign : out.benign).push_back(i);
  }
  return out;
}

std::vector<std::size_t> sorted(std::vector<std::size_t> v) {
  std::sort(v.begin(), v.end());
  return v;
}

void append(std::vector<std::size_t>& dst, const std::vector<std::size_t>& src,
            std::size_t from, std::size_t to) {
  dst.insert(dst.end(), src.begin() + static_cast<std::ptrdiff_t>(from),
             src.begin() + static_cast<std::ptrdiff_t>(to));
}

void fill_metrics(EvalReport& r) {
  const auto& c = r.confusion;
  const double tp = static_cast<double>(c.tp);
  const double fp = static_cast<double>(c.fp);
  const double tn = static_cast<double>(c.tn);
  const double fn = static_cast<double>(c.fn);
  r.degenerate = false;

  const double total = tp + fp + tn + fn;
  auto ratio = [&r](double num, double den) {
    if (den <= 0.0) {
      r.degenerate = true;
      return 0.0;
    }
    return num / den;
  };
  r.accuracy = ratio(tp + tn, total);
  r.precision = ratio(tp, tp + fp);
  r.recall = ratio(tp, tp + fn);
  r.f1 = ratio(2.0 * r.precision * r.recall, r.precision + r.recall);
  r.fpr = ratio(fp, fp + tn);
}

ConfusionMatrix confusion_from(const std::vector<Label>& truth,
                               const std::vector<Label>& predicted) {
  ConfusionMatrix c;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const bool actual_malign = truth[i] == Label::kMalign;
    const bool pred_malign = predicted[i] == Label::kMalign;
    if (actual_malign && pred_malign) ++c.tp;
    if (!actual_malign && pred_malign) ++c.fp;
    if (!actual_malign && !pred_malign) ++c.tn;
    if (actual_malign && !pred_malign) ++c.fn;
  }
  return c;
}

std::uint64_t config_seed(const ModelConfig& config) {
  switch (config.kind) {
    case ModelKind::kIsolationForest:
      return config.iforest.seed;
    case ModelKind::kEllipticEnvelope:
      return config.elliptic.seed;
    default:
      return 0;  // the other trainers are seed-free
  }
}

// Row-id prefix before the first '/', the benchmark the run belongs to.
std::string benchmark_of(const std::string& row_id) {
  const std::size_t slash = row_id.find('/');
  return slash == std::string::npos ? row_id : row_id.substr(0, slash);
}

std::map<std::string, std::vector<std::size_t>> group_by_benchmark(
    const FeatureMatrix& x) {
  std::map<std::string, std::vector<std::size_t>> groups;
  const auto& ids = x.row_ids();
  for (std::size_t i = 0; i < ids.size(); ++i) {
    groups[benchmark_of(ids[i])].push_back(i);
  }
  return groups;
}

}  // namespace

std::string_view scenario_kind_name(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::kBalanced:
      return "balanced";
    case ScenarioKind::kMalignOnly:
      return "malign-only";
    case ScenarioKind::kBenignOnly:
      return "benign-only";
    case ScenarioKind::kSboUnsupervised:
      return "sbo";
  }
  return "balanced";
}

std::optional<ScenarioKind> scenario_kind_from_name(std::string_view name) {
  if (name == "balanced") return ScenarioKind::kBalanced;
  if (name == "malign-only") return ScenarioKind::kMalignOnly;
  if (name == "benign-only") return ScenarioKind::kBenignOnly;
  if (name == "sbo") return ScenarioKind::kSboUnsupervised;
  return std::nullopt;
}

SplitResult split_scenario(const FeatureMatrix& x, const ScenarioSpec& spec) {
  if (spec.kind == ScenarioKind::kSboUnsupervised) {
    throw ConfigError(
        "the sbo scenario uses a prebuilt train/test corpus, not a split");
  }
  if (!(spec.train_fraction > 0.0) || !(spec.train_fraction < 1.0)) {
    throw InvalidHyperparam("train_fraction must lie in (0, 1)");
  }
  ClassIndices classes = partition_by_class(x);
  if (classes.benign.empty() || classes.malign.empty()) {
    throw SingleClass("scenario splits need both classes present");
  }

  Rng rng(mix_seed(spec.seed, "split"));
  shuffle_indices(classes.benign, rng);
  shuffle_indices(classes.malign, rng);
  const std::size_t benign_train = static_cast<std::size_t>(
      std::llround(spec.train_fraction * static_cast<double>(classes.benign.size())));
  const std::size_t malign_train = static_cast<std::size_t>(
      std::llround(spec.train_fraction * static_cast<double>(classes.malign.size())));

  std::vector<std::size_t> train_idx, test_idx;
  switch (spec.kind) {
    case ScenarioKind::kBalanced:
      append(train_idx, classes.benign, 0, benign_train);
      append(train_idx, classes.malign, 0, malign_train);
      append(test_idx, classes.benign, benign_train, classes.benign.size());
      append(test_idx, classes.malign, malign_train, classes.malign.size());
      break;
    case ScenarioKind::kMalignOnly:
      append(train_idx, classes.malign, 0, malign_train);
      append(test_idx, classes.malign, malign_train, classes.malign.size());
      append(test_idx, classes.benign, 0, classes.benign.size());
      break;
    case ScenarioKind::kBenignOnly:
      append(train_idx, classes.benign, 0, benign_train);
      append(test_idx, classes.benign, benign_train, classes.benign.size());
      append(test_idx, classes.malign, 0, classes.malign.size());
      break;
    case ScenarioKind::kSboUnsupervised:
      break;  // rejected above
  }
  train_idx = sorted(std::move(train_idx));
  test_idx = sorted(std::move(test_idx));
  return SplitResult{x.select_rows(train_idx), x.select_rows(test_idx)};
}

EvalReport run_supervised(const FeatureMatrix& x, const ScenarioSpec& spec,
                          const ModelConfig& config, bool timing) {
  if (spec.kind == ScenarioKind::kSboUnsupervised) {
    throw ConfigError("run_supervised handles the three supervised scenarios");
  }
  if (spec.kind == ScenarioKind::kBalanced && is_one_class(config.kind)) {
    throw ConfigError("the balanced scenario requires the two-class svm");
  }
  if (spec.kind != ScenarioKind::kBalanced && !is_one_class(config.kind)) {
    throw ConfigError(
        "one-class scenarios require an anomaly detector, not the svm");
  }

  const SplitResult split = split_scenario(x, spec);
  const auto start = std::chrono::steady_clock::now();

  Standardizer scaler = Standardizer::fit(split.train);
  const FeatureMatrix train = scaler.transform(split.train);
  const FeatureMatrix test = scaler.transform(split.test);

  TrainedModel model = train_model(train, config);
  std::vector<Label> predicted;
  if (config.kind == ModelKind::kSvm) {
    predicted = model.predict(test);
  } else {
    // The detector was trained on a single class: inliers belong to it,
    // anomalies to the other class.
    const Label present = spec.kind == ScenarioKind::kMalignOnly
                              ? Label::kMalign
                              : Label::kBenign;
    const Label other = present == Label::kMalign ? Label::kBenign
                                                  : Label::kMalign;
    for (const double s : model.decision_scores(test)) {
      predicted.push_back(s > model.decision_threshold ? other : present);
    }
  }

  const auto stop = std::chrono::steady_clock::now();

  EvalReport report;
  report.scenario = scenario_kind_name(spec.kind);
  report.model = config.kind;
  report.hyperparams = model.hyperparams;
  report.confusion =
      confusion_from(require_labels(test, "supervised test set"), predicted);
  report.seed = spec.seed;
  if (timing) {
    report.wall_ms =
        std::chrono::duration<double, std::milli>(stop - start).count();
  }
  fill_metrics(report);
  return report;
}

std::vector<EvalReport> run_sbo(const FeatureMatrix& train,
                                const FeatureMatrix& test,
                                const std::vector<ModelConfig>& models,
                                bool timing) {
  for (const Label l : require_labels(train, "sbo training set")) {
    if (l == Label::kMalign) {
      throw LabelLeak("sbo training data must contain only benign rows");
    }
  }
  require_labels(test, "sbo test set");
  for (const ModelConfig& config : models) {
    if (!is_one_class(config.kind)) {
      throw ConfigError("sbo evaluation uses one-class models only");
    }
  }

  const auto train_groups = group_by_benchmark(train);
  const auto test_groups = group_by_benchmark(test);
  if (train_groups.size() != test_groups.size()) {
    throw ConfigError("benchmark sets differ between train and test");
  }
  for (const auto& [name, rows] : train_groups) {
    if (test_groups.find(name) == test_groups.end()) {
      throw ConfigError("benchmark '" + name + "' missing from the test set");
    }
  }

  std::vector<EvalReport> reports;
  for (const auto& [name, train_rows] : train_groups) {
    const FeatureMatrix bench_train_raw = train.select_rows(train_rows);
    const FeatureMatrix bench_test_raw =
        test.select_rows(test_groups.at(name));
    for (const ModelConfig& config : models) {
      const auto start = std::chrono::steady_clock::now();
      Standardizer scaler = Standardizer::fit(bench_train_raw);
      const FeatureMatrix bench_train = scaler.transform(bench_train_raw);
      const FeatureMatrix bench_test = scaler.transform(bench_test_raw);
      TrainedModel model = train_model(bench_train, config);
      const std::vector<Label> predicted = model.predict(bench_test);
      const auto stop = std::chrono::steady_clock::now();

      EvalReport report;
      report.scenario = "sbo/" + name;
      report.model = config.kind;
      report.hyperparams = model.hyperparams;
      report.confusion = confusion_from(
          require_labels(bench_test, "sbo test set"), predicted);
      report.seed = config_seed(config);
      if (timing) {
        report.wall_ms =
            std::chrono::duration<double, std::milli>(stop - start).count();
      }
      fill_metrics(report);
      reports.push_back(std::move(report));
    }
  }
  return reports;
}

std::string render_text(const std::vector<EvalReport>& reports) {
  std::ostringstream out;
  for (const EvalReport& r : reports) {
    out << "=== " << r.scenario << " :: " << model_kind_name(r.model)
        << " ===\n";
    char line[160];
    std::snprintf(line, sizeof(line), "%-14s %12s %12s\n", "", "pred malign",
                  "pred benign");
    out << line;
    std::snprintf(line, sizeof(line), "%-14s %12llu %12llu\n", "true malign",
                  static_cast<unsigned long long>(r.confusion.tp),
                  static_cast<unsigned long long>(r.confusion.fn));
    out << line;
    std::snprintf(line, sizeof(line), "%-14s %12llu %12llu\n", "true benign",
                  static_cast<unsigned long long>(r.confusion.fp),
                  static_cast<unsigned long long>(r.confusion.tn));
    out << line;
    std::snprintf(line, sizeof(line),
                  "accuracy=%.4f precision=%.4f recall=%.4f f1=%.4f "
                  "fpr=%.4f%s\n",
                  r.accuracy, r.precision, r.recall, r.f1, r.fpr,
                  r.degenerate ? " (degenerate)" : "");
    out << line;
    if (!r.hyperparams.empty()) {
      out << "hyperparams:";
      for (const auto& [k, v] : r.hyperparams) {
        out << ' ' << k << '=' << fmt_g17(v);
      }
      out << '\n';
    }
    out << '\n';
  }
  return out.str();
}

static const char kCsvHeader[] =
    "scenario,model,accuracy,precision,recall,f1,fpr,tp,fp,tn,fn,seed,wall_ms";

std::string render_csv(const std::vector<EvalReport>& reports) {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  for (const EvalReport& r : reports) {
    out << r.scenario << ',' << model_kind_name(r.model) << ','
        << fmt_g17(r.accuracy) << ',' << fmt_g17(r.precision) << ','
        << fmt_g17(r.recall) << ',' << fmt_g17(r.f1) << ',' << fmt_g17(r.fpr)
        << ',' << r.confusion.tp << ',' << r.confusion.fp << ','
        << r.confusion.tn << ',' << r.confusion.fn << ',' << r.seed << ','
        << fmt_g17(r.wall_ms) << '\n';
  }
  return out.str();
}

std::string render_json(const std::vector<EvalReport>& reports) {
  json arr = json::array();
  for (const EvalReport& r : reports) {
    arr.push_back(json{{"scenario", r.scenario},
                       {"model", std::string(model_kind_name(r.model))},
                       {"accuracy", r.accuracy},
                       {"precision", r.precision},
                       {"recall", r.recall},
                       {"f1", r.f1},
                       {"fpr", r.fpr},
                       {"tp", r.confusion.tp},
                       {"fp", r.confusion.fp},
                       {"tn", r.confusion.tn},
                       {"fn", r.confusion.fn},
                       {"seed", r.seed},
                       {"wall_ms", r.wall_ms}});
  }
  return arr.dump(2) + "\n";
}

std::string render_benchmark_accuracy_csv(
    const std::vector<EvalReport>& reports) {
  std::ostringstream out;
  out << "benchmark,model,accuracy\n";
  for (const EvalReport& r : reports) {
    if (r.scenario.rfind("sbo/", 0) != 0) continue;
    out << r.scenario.substr(4) << ',' << model_kind_name(r.model) << ','
        << fmt_g17(r.accuracy) << '\n';
  }
  return out.str();
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = line.find(',', pos);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(pos));
      break;
    }
    fields.push_back(line.substr(pos, comma - pos));
    pos = comma + 1;
  }
  return fields;
}

double parse_double(const std::string& s, std::size_t line_no) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw SchemaViolation(line_no, "bad real '" + s + "'");
  }
  return v;
}

std::uint64_t parse_u64(const std::string& s, std::size_t line_no) {
  std::uint64_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw SchemaViolation(line_no, "bad integer '" + s + "'");
  }
  return v;
}

}  // namespace

std::vector<EvalReport> parse_report_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  // Leading '#' lines carry provenance comments written by the tooling.
  do {
    if (!std::getline(in, line)) {
      throw SchemaViolation(1, "missing report header");
    }
    ++line_no;
  } while (!line.empty() && line.front() == '#');
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) {
    throw SchemaViolation(1, "unexpected report header '" + line + "'");
  }
  std::vector<EvalReport> reports;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 13) {
      throw SchemaViolation(line_no, "expected 13 columns");
    }
    EvalReport r;
    r.scenario = f[0];
    const auto kind = model_kind_from_name(f[1]);
    if (!kind) throw SchemaViolation(line_no, "unknown model '" + f[1] + "'");
    r.model = *kind;
    r.accuracy = parse_double(f[2], line_no);
    r.precision = parse_double(f[3], line_no);
    r.recall = parse_double(f[4], line_no);
    r.f1 = parse_double(f[5], line_no);
    r.fpr = parse_double(f[6], line_no);
    r.confusion.tp = parse_u64(f[7], line_no);
    r.confusion.fp = parse_u64(f[8], line_no);
    r.confusion.tn = parse_u64(f[9], line_no);
    r.confusion.fn = parse_u64(f[10], line_no);
    r.seed = parse_u64(f[11], line_no);
    r.wall_ms = parse_double(f[12], line_no);
    reports.push_back(std::move(r));
  }
  return reports;
}

std::vector<EvalReport> parse_report_json(const std::string& text) {
  json arr;
  try {
    arr = json::parse(text);
  } catch (const json::exception& e) {
    throw SchemaViolation(0, std::string("report json: ") + e.what());
  }
  // Tool output may wrap the array as {"provenance": ..., "reports": [...]}.
  if (arr.is_object() && arr.contains("reports")) arr = arr.at("reports");
  if (!arr.is_array()) {
    throw SchemaViolation(0, "report json must be an array");
  }
  std::vector<EvalReport> reports;
  try {
    for (const auto& j : arr) {
      EvalReport r;
      r.scenario = j.at("scenario").get<std::string>();
      const std::string name = j.at("model").get<std::string>();
      const auto kind = model_kind_from_name(name);
      if (!kind) {
        throw SchemaViolation(0, "unknown model '" + name + "'");
      }
      r.model = *kind;
      r.accuracy = j.at("accuracy").get<double>();
      r.precision = j.at("precision").get<double>();
      r.recall = j.at("recall").get<double>();
      r.f1 = j.at("f1").get<double>();
      r.fpr = j.at("fpr").get<double>();
      r.confusion.tp = j.at("tp").get<std::uint64_t>();
      r.confusion.fp = j.at("fp").get<std::uint64_t>();
      r.confusion.tn = j.at("tn").get<std::uint64_t>();
      r.confusion.fn = j.at("fn").get<std::uint64_t>();
      r.seed = j.at("seed").get<std::uint64_t>();
      r.wall_ms = j.at("wall_ms").get<double>();
      reports.push_back(std::move(r));
    }
  } catch (const json::exception& e) {
    throw SchemaViolation(0, std::string("report json: ") + e.what());
  }
  return reports;
}

}  // namespace hpcguard
