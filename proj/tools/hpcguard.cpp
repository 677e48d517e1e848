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

// hpcguard command-line front end. One subcommand per pipeline stage:
//
//   synth    generate a synthetic labeled trace corpus (or `synth sbo`)
//   ingest   convert `perf stat -x, -I` interval output into trace JSONL
//   features extract per-sample or per-run feature CSV from a trace file
//   train    fit one classifier on a feature CSV and save it as JSON
//   eval     run a detection scenario end to end and render reports
//   scan     decode a RISC-V binary or listing into hashed opcode features
//   report   reformat a saved report file
//
// Exit codes: 0 success, 1 usage error, 2 data or runtime error. Every
// output file embeds a provenance object {tool_version, command, config,
// seed} so artifacts are self-describing; reruns with identical inputs are
// byte-identical. A JSON config file (--config) can supply any long-flag
// value under a section named after the subcommand ("synth", "synth.sbo",
// "eval", ...); explicit flags always win.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hpcguard/elf.hpp"
#include "hpcguard/error.hpp"
#include "hpcguard/eval.hpp"
#include "hpcguard/features.hpp"
#include "hpcguard/matrix.hpp"
#include "hpcguard/model.hpp"
#include "hpcguard/opcodes.hpp"
#include "hpcguard/perf_ingest.hpp"
#include "hpcguard/riscv.hpp"
#include "hpcguard/synth.hpp"
#include "hpcguard/trace.hpp"
#include "hpcguard/trace_io.hpp"
#include "hpcguard/version.hpp"

namespace {

using nlohmann::json;

// Bad invocations (missing/contradictory values, from flags or config file)
// exit 1; hpcguard::Error and anything else from the library exits 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw hpcguard::IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw hpcguard::IoError("cannot read '" + path + "'");
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw hpcguard::IoError("cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw hpcguard::IoError("cannot write '" + path + "'");
}

std::string fmt_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Optional JSON config file with one object per subcommand, keyed by the
// dotted command path.
class ConfigFile {
 public:
  static ConfigFile load(const std::string& path) {
    ConfigFile cf;
    if (path.empty()) return cf;
    std::string text;
    try {
      text = read_file(path);
    } catch (const hpcguard::Error& e) {
      throw UsageError(std::string("config file: ") + e.what());
    }
    json parsed = json::parse(text, nullptr, false);
    if (parsed.is_discarded() || !parsed.is_object()) {
      throw UsageError("config file '" + path +
                       "' is not a JSON object of per-command sections");
    }
    cf.root_ = std::move(parsed);
    return cf;
  }

  const json* section(const std::string& name) const {
    if (!root_.is_object()) return nullptr;
    auto it = root_.find(name);
    if (it == root_.end()) return nullptr;
    if (!it->is_object()) {
      throw UsageError("config section '" + name + "' must be an object");
    }
    return &*it;
  }

 private:
  json root_;
};

// Fills option targets from a config section wherever the command line left
// them untouched, and answers whether a value came from either source.
class Merger {
 public:
  explicit Merger(const json* section) : section_(section) {}

  template <typename T>
  void apply(const CLI::Option* opt, const char* key, T& out) const {
    if (opt != nullptr && opt->count() > 0) return;
    const json* v = find(key);
    if (v == nullptr) return;
    try {
      out = v->get<T>();
    } catch (const json::exception& e) {
      throw UsageError(std::string("config key '") + key + "': " + e.what());
    }
  }

  bool provided(const CLI::Option* opt, const char* key) const {
    return (opt != nullptr && opt->count() > 0) || find(key) != nullptr;
  }

 private:
  const json* find(const char* key) const {
    if (section_ == nullptr) return nullptr;
    auto it = section_->find(key);
    return it == section_->end() ? nullptr : &*it;
  }

  const json* section_;
};

json make_provenance(const std::string& command, json effective_config) {
  json p;
  p["tool_version"] = hpcguard::kVersion;
  p["command"] = command;
  p["config"] = std::move(effective_config);
  return p;
}

std::string provenance_comment(const json& prov) {
  return "# " + prov.dump() + "\n";
}

hpcguard::ModelKind resolve_model_kind(const std::string& name,
                                       const char* command) {
  auto kind = hpcguard::model_kind_from_name(name);
  if (!kind) {
    throw UsageError(std::string(command) + ": unknown model '" + name +
                     "' (expected svm, ocsvm, lof, iforest, or elliptic)");
  }
  return *kind;
}

// Classifier knobs shared by `train` and `eval`. Only the block matching
// the selected model kind is ultimately read by the trainer.
struct HyperFlags {
  double c = 1.0;
  double nu = 0.1;
  std::string kernel = "rbf";
  double gamma = 1.0;
  double tol = 1e-3;
  std::size_t k = 20;
  double lof_threshold = 1.5;
  std::size_t trees = 100;
  std::size_t subsample = 256;
  double contamination = 0.1;
  std::size_t restarts = 10;
  bool gamma_pinned = false;  // --gamma given: disables the automatic RBF
                              // bandwidth 1/(d * mean feature variance)

  CLI::Option* c_opt = nullptr;
  CLI::Option* nu_opt = nullptr;
  CLI::Option* kernel_opt = nullptr;
  CLI::Option* gamma_opt = nullptr;
  CLI::Option* tol_opt = nullptr;
  CLI::Option* k_opt = nullptr;
  CLI::Option* lof_threshold_opt = nullptr;
  CLI::Option* trees_opt = nullptr;
  CLI::Option* subsample_opt = nullptr;
  CLI::Option* contamination_opt = nullptr;
  CLI::Option* restarts_opt = nullptr;

  void setup(CLI::App* cmd) {
    c_opt = cmd->add_option("--c", c, "svm: soft-margin penalty C")
                ->capture_default_str();
    nu_opt = cmd->add_option("--nu", nu,
                             "ocsvm: training outlier fraction bound")
                 ->capture_default_str();
    kernel_opt = cmd->add_option("--kernel", kernel,
                                 "svm/ocsvm kernel: rbf or linear")
                     ->capture_default_str();
    gamma_opt = cmd->add_option(
        "--gamma", gamma,
        "svm/ocsvm RBF bandwidth (default: 1 / (dim * mean variance))");
    tol_opt = cmd->add_option("--tol", tol, "svm/ocsvm KKT tolerance")
                  ->capture_default_str();
    k_opt = cmd->add_option("--k", k, "lof: neighborhood size")
                ->capture_default_str();
    lof_threshold_opt =
        cmd->add_option("--lof-threshold", lof_threshold,
                        "lof: anomaly iff score exceeds this")
            ->capture_default_str();
    trees_opt = cmd->add_option("--trees", trees, "iforest: ensemble size")
                    ->capture_default_str();
    subsample_opt = cmd->add_option("--subsample", subsample,
                                    "iforest: per-tree subsample size")
                        ->capture_default_str();
    contamination_opt =
        cmd->add_option("--contamination", contamination,
                        "iforest/elliptic: assumed anomaly fraction")
            ->capture_default_str();
    restarts_opt = cmd->add_option("--restarts", restarts,
                                   "elliptic: covariance search restarts")
                       ->capture_default_str();
  }

  void merge(const Merger& m) {
    m.apply(c_opt, "c", c);
    m.apply(nu_opt, "nu", nu);
    m.apply(kernel_opt, "kernel", kernel);
    m.apply(gamma_opt, "gamma", gamma);
    m.apply(tol_opt, "tol", tol);
    m.apply(k_opt, "k", k);
    m.apply(lof_threshold_opt, "lof-threshold", lof_threshold);
    m.apply(trees_opt, "trees", trees);
    m.apply(subsample_opt, "subsample", subsample);
    m.apply(contamination_opt, "contamination", contamination);
    m.apply(restarts_opt, "restarts", restarts);
    gamma_pinned = m.provided(gamma_opt, "gamma");
    if (kernel != "rbf" && kernel != "linear") {
      throw UsageError("unknown kernel '" + kernel +
                       "' (expected rbf or linear)");
    }
  }

  hpcguard::ModelConfig build(hpcguard::ModelKind kind,
                              std::uint64_t seed) const {
    hpcguard::KernelSpec ks;
    ks.kind = kernel == "linear" ? hpcguard::KernelKind::kLinear
                                 : hpcguard::KernelKind::kRbf;
    ks.gamma = gamma;

    hpcguard::ModelConfig config;
    config.kind = kind;
    config.svm.c = c;
    config.svm.kernel = ks;
    config.svm.auto_gamma = !gamma_pinned;
    config.svm.tol = tol;
    config.ocsvm.nu = nu;
    config.ocsvm.kernel = ks;
    config.ocsvm.auto_gamma = !gamma_pinned;
    config.ocsvm.tol = tol;
    config.lof.k = k;
    config.lof.threshold = lof_threshold;
    config.iforest.n_trees = trees;
    config.iforest.subsample = subsample;
    config.iforest.contamination = contamination;
    config.iforest.seed = seed;
    config.elliptic.contamination = contamination;
    config.elliptic.n_restarts = restarts;
    config.elliptic.seed = seed;
    return config;
  }

  void echo(json& cfg) const {
    cfg["c"] = c;
    cfg["nu"] = nu;
    cfg["kernel"] = kernel;
    if (gamma_pinned) {
      cfg["gamma"] = gamma;
    } else {
      cfg["gamma"] = "auto";
    }
    cfg["tol"] = tol;
    cfg["k"] = k;
    cfg["lof-threshold"] = lof_threshold;
    cfg["trees"] = trees;
    cfg["subsample"] = subsample;
    cfg["contamination"] = contamination;
    cfg["restarts"] = restarts;
  }
};

// ---------------------------------------------------------------------------
// synth
// ---------------------------------------------------------------------------

struct SynthCmd {
  CLI::App* cmd = nullptr;
  CLI::App* sbo = nullptr;

  std::string roster = "default";
  std::size_t samples = 2000;
  std::uint64_t seed = 0;
  std::string out = "corpus.jsonl";
  CLI::Option* roster_opt = nullptr;
  CLI::Option* samples_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* out_opt = nullptr;

  double eps = 0.01;
  std::size_t train_runs = 2000;
  std::size_t test_runs = 2000;
  std::uint64_t sbo_seed = 0;
  std::string out_train = "sbo_train.jsonl";
  std::string out_test = "sbo_test.jsonl";
  CLI::Option* eps_opt = nullptr;
  CLI::Option* train_runs_opt = nullptr;
  CLI::Option* test_runs_opt = nullptr;
  CLI::Option* sbo_seed_opt = nullptr;
  CLI::Option* out_train_opt = nullptr;
  CLI::Option* out_test_opt = nullptr;

  void setup(CLI::App& app) {
    cmd = app.add_subcommand(
        "synth", "Generate a synthetic labeled HPC trace corpus");
    roster_opt = cmd->add_option("--roster", roster,
                                 "Workload roster (only \"default\": 7 "
                                 "benign programs + 7 attacks)")
                     ->capture_default_str();
    samples_opt =
        cmd->add_option("--samples", samples, "1 ms samples per application")
            ->capture_default_str();
    seed_opt = cmd->add_option("--seed", seed, "Generator seed (required)");
    out_opt = cmd->add_option("-o,--out", out, "Output trace JSONL path")
                  ->capture_default_str();

    sbo = cmd->add_subcommand("sbo",
                              "Generate the stealthy stack-buffer-overflow "
                              "corpus: benign train runs plus a 50/50 "
                              "benign/injected test half per benchmark");
    eps_opt = sbo->add_option(
                     "--eps", eps,
                     "Injected-instruction fraction (stealth epsilon)")
                  ->capture_default_str();
    train_runs_opt = sbo->add_option("--train-runs", train_runs,
                                     "Benign training runs per benchmark")
                         ->capture_default_str();
    test_runs_opt = sbo->add_option("--test-runs", test_runs,
                                    "Test runs per benchmark (even; second "
                                    "half carries the injection)")
                        ->capture_default_str();
    sbo_seed_opt =
        sbo->add_option("--seed", sbo_seed, "Generator seed (required)");
    out_train_opt = sbo->add_option("--out-train", out_train,
                                    "Training trace JSONL path")
                        ->capture_default_str();
    out_test_opt =
        sbo->add_option("--out-test", out_test, "Test trace JSONL path")
            ->capture_default_str();
  }

  int run(const ConfigFile& cf) const {
    if (sbo->parsed()) return run_sbo_corpus(cf);

    Merger m(cf.section("synth"));
    std::string roster_v = roster;
    std::size_t samples_v = samples;
    std::uint64_t seed_v = seed;
    std::string out_v = out;
    m.apply(roster_opt, "roster", roster_v);
    m.apply(samples_opt, "samples", samples_v);
    m.apply(seed_opt, "seed", seed_v);
    m.apply(out_opt, "out", out_v);
    if (!m.provided(seed_opt, "seed")) {
      throw UsageError("synth: --seed is required");
    }
    if (roster_v != "default") {
      throw UsageError("synth: unknown roster '" + roster_v + "'");
    }
    if (samples_v == 0) {
      throw UsageError("synth: --samples must be at least 1");
    }

    const auto profiles = hpcguard::make_default_roster();
    const auto ts = hpcguard::generate_traces(profiles, samples_v, seed_v);

    json cfg{{"roster", roster_v},
             {"samples", samples_v},
             {"seed", seed_v},
             {"out", out_v}};
    json prov = make_provenance("synth", std::move(cfg));
    prov["seed"] = seed_v;
    hpcguard::write_traceset(ts, out_v, prov.dump());
    std::cout << "wrote " << out_v << ": " << ts.runs.size() << " runs, "
              << ts.total_samples() << " samples\n";
    return 0;
  }

  int run_sbo_corpus(const ConfigFile& cf) const {
    Merger m(cf.section("synth.sbo"));
    double eps_v = eps;
    std::size_t train_v = train_runs;
    std::size_t test_v = test_runs;
    std::uint64_t seed_v = sbo_seed;
    std::string out_train_v = out_train;
    std::string out_test_v = out_test;
    m.apply(eps_opt, "eps", eps_v);
    m.apply(train_runs_opt, "train-runs", train_v);
    m.apply(test_runs_opt, "test-runs", test_v);
    m.apply(sbo_seed_opt, "seed", seed_v);
    m.apply(out_train_opt, "out-train", out_train_v);
    m.apply(out_test_opt, "out-test", out_test_v);
    if (!m.provided(sbo_seed_opt, "seed")) {
      throw UsageError("synth sbo: --seed is required");
    }

    hpcguard::SboInjection injection;
    injection.stealth_epsilon = eps_v;
    const auto corpus = hpcguard::generate_sbo_corpus(
        hpcguard::sbo_benchmark_profiles(), train_v, test_v, injection,
        seed_v);

    json cfg{{"eps", eps_v},
             {"train-runs", train_v},
             {"test-runs", test_v},
             {"seed", seed_v},
             {"out-train", out_train_v},
             {"out-test", out_test_v}};
    json prov = make_provenance("synth sbo", std::move(cfg));
    prov["seed"] = seed_v;
    json prov_train = prov;
    prov_train["output"] = "train";
    json prov_test = prov;
    prov_test["output"] = "test";
    hpcguard::write_traceset(corpus.train, out_train_v, prov_train.dump());
    hpcguard::write_traceset(corpus.test, out_test_v, prov_test.dump());
    std::cout << "wrote " << out_train_v << ": " << corpus.train.runs.size()
              << " runs, " << corpus.train.total_samples() << " samples\n"
              << "wrote " << out_test_v << ": " << corpus.test.runs.size()
              << " runs, " << corpus.test.total_samples() << " samples\n";
    return 0;
  }
};

// ---------------------------------------------------------------------------
// ingest
// ---------------------------------------------------------------------------

struct IngestCmd {
  CLI::App* cmd = nullptr;
  std::string in;
  std::string app_id;
  std::string label = "none";
  std::string out = "ingested.jsonl";
  CLI::Option* in_opt = nullptr;
  CLI::Option* app_id_opt = nullptr;
  CLI::Option* label_opt = nullptr;
  CLI::Option* out_opt = nullptr;

  void setup(CLI::App& app) {
    cmd = app.add_subcommand(
        "ingest", "Convert `perf stat -x, -I <ms>` output into trace JSONL");
    in_opt = cmd->add_option("--in", in, "perf interval CSV file (required)");
    app_id_opt = cmd->add_option("--app-id", app_id,
                                 "Application identifier (required)");
    label_opt = cmd->add_option("--label", label,
                                "Ground-truth label: benign, malign, or none")
                    ->capture_default_str();
    out_opt = cmd->add_option("-o,--out", out, "Output trace JSONL path")
                  ->capture_default_str();
  }

  int run(const ConfigFile& cf) const {
    Merger m(cf.section("ingest"));
    std::string in_v = in;
    std::string app_v = app_id;
    std::string label_v = label;
    std::string out_v = out;
    m.apply(in_opt, "in", in_v);
    m.apply(app_id_opt, "app-id", app_v);
    m.apply(label_opt, "label", label_v);
    m.apply(out_opt, "out", out_v);
    if (!m.provided(in_opt, "in")) {
      throw UsageError("ingest: --in is required");
    }
    if (!m.provided(app_id_opt, "app-id")) {
      throw UsageError("ingest: --app-id is required");
    }
    std::optional<hpcguard::Label> lab;
    if (label_v != "none") {
      lab = hpcguard::label_from_name(label_v);
      if (!lab) {
        throw UsageError("ingest: unknown label '" + label_v +
                         "' (expected benign, malign, or none)");
      }
    }

    const auto ts = hpcguard::ingest_perf_csv(in_v, app_v, lab);

    json cfg{{"in", in_v},
             {"app-id", app_v},
             {"label", label_v},
             {"out", out_v}};
    const json prov = make_provenance("ingest", std::move(cfg));
    hpcguard::write_traceset(ts, out_v, prov.dump());
    std::cout << "wrote " << out_v << ": " << ts.runs.size() << " runs, "
              << ts.total_samples() << " samples\n";
    return 0;
  }
};

// ---------------------------------------------------------------------------
// features
// ---------------------------------------------------------------------------

struct FeaturesCmd {
  CLI::App* cmd = nullptr;
  std::string in;
  std::string granularity = "run";
  std::string out = "features.csv";
  CLI::Option* in_opt = nullptr;
  CLI::Option* granularity_opt = nullptr;
  CLI::Option* out_opt = nullptr;

  void setup(CLI::App& app) {
    cmd = app.add_subcommand(
        "features", "Extract a feature CSV from a trace JSONL file");
    in_opt = cmd->add_option("--in", in, "Trace JSONL file (required)");
    granularity_opt =
        cmd->add_option("--granularity", granularity,
                        "\"sample\": one row per 1 ms sample (counts + "
                        "branch-miss rate); \"run\": one row per run "
                        "(per-event mean and stdev + miss rate)")
            ->capture_default_str();
    out_opt = cmd->add_option("-o,--out", out, "Output feature CSV path")
                  ->capture_default_str();
  }

  int run(const ConfigFile& cf) const {
    Merger m(cf.section("features"));
    std::string in_v = in;
    std::string gran_v = granularity;
    std::string out_v = out;
    m.apply(in_opt, "in", in_v);
    m.apply(granularity_opt, "granularity", gran_v);
    m.apply(out_opt, "out", out_v);
    if (!m.provided(in_opt, "in")) {
      throw UsageError("features: --in is required");
    }
    if (gran_v != "run" && gran_v != "sample") {
      throw UsageError("features: unknown granularity '" + gran_v +
                       "' (expected run or sample)");
    }

    const auto ts = hpcguard::read_traceset(in_v);
    const auto fm = gran_v == "run" ? hpcguard::run_features(ts)
                                    : hpcguard::sample_features(ts);

    json cfg{{"in", in_v}, {"granularity", gran_v}, {"out", out_v}};
    const json prov = make_provenance("features", std::move(cfg));
    write_file(out_v, provenance_comment(prov) + fm.to_csv());
    std::cout << "wrote " << out_v << ": " << fm.rows() << " rows x "
              << fm.cols() << " features\n";
    return 0;
  }
};

// ---------------------------------------------------------------------------
// train
// ---------------------------------------------------------------------------

struct TrainCmd {
  CLI::App* cmd = nullptr;
  std::string in;
  std::string model = "svm";
  std::string out = "model.json";
  std::uint64_t seed = 0;
  HyperFlags hyper;
  CLI::Option* in_opt = nullptr;
  CLI::Option* model_opt = nullptr;
  CLI::Option* out_opt = nullptr;
  CLI::Option* seed_opt = nullptr;

  void setup(CLI::App& app) {
    cmd = app.add_subcommand(
        "train",
        "Fit one classifier on a feature CSV (rows are used as-is; curate "
        "the file for one-class training) and save it as JSON");
    in_opt = cmd->add_option("--in", in, "Feature CSV file (required)");
    model_opt = cmd->add_option(
                       "--model", model,
                       "Classifier: svm, ocsvm, lof, iforest, or elliptic")
                    ->capture_default_str();
    out_opt = cmd->add_option("-o,--out", out, "Output model JSON path")
                  ->capture_default_str();
    seed_opt = cmd->add_option(
        "--seed", seed, "Seed (required for iforest and elliptic)");
    hyper.setup(cmd);
  }

  int run(const ConfigFile& cf) {
    Merger m(cf.section("train"));
    std::string in_v = in;
    std::string model_v = model;
    std::string out_v = out;
    std::uint64_t seed_v = seed;
    m.apply(in_opt, "in", in_v);
    m.apply(model_opt, "model", model_v);
    m.apply(out_opt, "out", out_v);
    m.apply(seed_opt, "seed", seed_v);
    hyper.merge(m);
    if (!m.provided(in_opt, "in")) {
      throw UsageError("train: --in is required");
    }
    const auto kind = resolve_model_kind(model_v, "train");
    const bool stochastic = kind == hpcguard::ModelKind::kIsolationForest ||
                            kind == hpcguard::ModelKind::kEllipticEnvelope;
    if (stochastic && !m.provided(seed_opt, "seed")) {
      throw UsageError("train: --seed is required for model '" + model_v +
                       "'");
    }

    const auto fm = hpcguard::FeatureMatrix::from_csv(read_file(in_v));
    const auto trained =
        hpcguard::train_model(fm, hyper.build(kind, seed_v));

    json cfg{{"in", in_v}, {"model", model_v}, {"out", out_v}};
    if (m.provided(seed_opt, "seed")) cfg["seed"] = seed_v;
    hyper.echo(cfg);
    json prov = make_provenance("train", std::move(cfg));
    if (stochastic) prov["seed"] = seed_v;

    json doc = json::parse(hpcguard::model_to_json(trained));
    doc["provenance"] = std::move(prov);
    write_file(out_v, doc.dump() + "\n");
    std::cout << "trained " << model_v << " on " << fm.rows()
              << " rows; wrote " << out_v << "\n";
    return 0;
  }
};

// ---------------------------------------------------------------------------
// eval
// ---------------------------------------------------------------------------

struct EvalCmd {
  CLI::App* cmd = nullptr;
  std::string scenario;
  std::string model = "svm";
  std::string models = "lof,ocsvm,iforest,elliptic";
  std::string in;
  std::string train_path;
  std::string test_path;
  std::string out;
  double train_fraction = 0.8;
  std::uint64_t seed = 0;
  bool timing = false;
  HyperFlags hyper;
  CLI::Option* scenario_opt = nullptr;
  CLI::Option* model_opt = nullptr;
  CLI::Option* models_opt = nullptr;
  CLI::Option* in_opt = nullptr;
  CLI::Option* train_opt = nullptr;
  CLI::Option* test_opt = nullptr;
  CLI::Option* out_opt = nullptr;
  CLI::Option* frac_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* timing_opt = nullptr;

  void setup(CLI::App& app) {
    cmd = app.add_subcommand(
        "eval", "Run a detection scenario end to end and render reports");
    scenario_opt = cmd->add_option(
        "--scenario", scenario,
        "balanced (two-class svm), malign-only / benign-only (one-class "
        "train), or sbo (per-benchmark anomaly detection; required)");
    model_opt = cmd->add_option("--model", model,
                                "Supervised scenarios: classifier to train")
                    ->capture_default_str();
    models_opt =
        cmd->add_option("--models", models,
                        "sbo scenario: comma-separated anomaly detectors")
            ->capture_default_str();
    in_opt = cmd->add_option(
        "--in", in, "Trace JSONL corpus (supervised scenarios; per-sample "
                    "features)");
    train_opt = cmd->add_option(
        "--train", train_path,
        "sbo scenario: benign training trace JSONL (per-run features)");
    test_opt = cmd->add_option("--test", test_path,
                               "sbo scenario: test trace JSONL");
    out_opt = cmd->add_option(
        "-o,--out", out,
        "Report path prefix; writes <prefix>.csv, .json, and .txt");
    frac_opt = cmd->add_option("--train-fraction", train_fraction,
                               "Training share of the scenario split")
                   ->capture_default_str();
    seed_opt = cmd->add_option("--seed", seed,
                               "Split/model seed (required)");
    timing_opt = cmd->add_flag(
        "--timing", timing,
        "Measure wall_ms (reports stop being byte-identical across runs)");
  }

  int run(const ConfigFile& cf) {
    Merger m(cf.section("eval"));
    std::string scenario_v = scenario;
    std::string model_v = model;
    std::string models_v = models;
    std::string in_v = in;
    std::string train_v = train_path;
    std::string test_v = test_path;
    std::string out_v = out;
    double frac_v = train_fraction;
    std::uint64_t seed_v = seed;
    bool timing_v = timing;
    m.apply(scenario_opt, "scenario", scenario_v);
    m.apply(model_opt, "model", model_v);
    m.apply(models_opt, "models", models_v);
    m.apply(in_opt, "in", in_v);
    m.apply(train_opt, "train", train_v);
    m.apply(test_opt, "test", test_v);
    m.apply(out_opt, "out", out_v);
    m.apply(frac_opt, "train-fraction", frac_v);
    m.apply(seed_opt, "seed", seed_v);
    m.apply(timing_opt, "timing", timing_v);
    hyper.merge(m);
    if (!m.provided(scenario_opt, "scenario")) {
      throw UsageError("eval: --scenario is required");
    }
    if (!m.provided(seed_opt, "seed")) {
      throw UsageError("eval: --seed is required");
    }
    const auto sk = hpcguard::scenario_kind_from_name(scenario_v);
    if (!sk) {
      throw UsageError("eval: unknown scenario '" + scenario_v +
                       "' (expected balanced, malign-only, benign-only, or "
                       "sbo)");
    }

    json cfg{{"scenario", scenario_v}, {"seed", seed_v},
             {"timing", timing_v}};
    hyper.echo(cfg);

    std::vector<hpcguard::EvalReport> reports;
    if (*sk == hpcguard::ScenarioKind::kSboUnsupervised) {
      if (!m.provided(train_opt, "train") || !m.provided(test_opt, "test")) {
        throw UsageError("eval: --scenario sbo requires --train and --test");
      }
      std::vector<hpcguard::ModelConfig> configs;
      std::stringstream names(models_v);
      std::string name;
      while (std::getline(names, name, ',')) {
        if (name.empty()) continue;
        const auto kind = resolve_model_kind(name, "eval");
        if (!hpcguard::is_one_class(kind)) {
          throw UsageError("eval: model '" + name +
                           "' is two-class; the sbo scenario takes anomaly "
                           "detectors only");
        }
        configs.push_back(hyper.build(kind, seed_v));
      }
      if (configs.empty()) {
        throw UsageError("eval: --models must name at least one model");
      }
      const auto fm_train =
          hpcguard::run_features(hpcguard::read_traceset(train_v));
      const auto fm_test =
          hpcguard::run_features(hpcguard::read_traceset(test_v));
      reports = hpcguard::run_sbo(fm_train, fm_test, configs, timing_v);
      cfg["models"] = models_v;
      cfg["train"] = train_v;
      cfg["test"] = test_v;
    } else {
      if (!m.provided(in_opt, "in")) {
        throw UsageError("eval: --in is required for scenario '" +
                         scenario_v + "'");
      }
      const auto kind = resolve_model_kind(model_v, "eval");
      if (*sk == hpcguard::ScenarioKind::kBalanced &&
          kind != hpcguard::ModelKind::kSvm) {
        throw UsageError(
            "eval: the balanced scenario trains the two-class svm");
      }
      if (*sk != hpcguard::ScenarioKind::kBalanced &&
          !hpcguard::is_one_class(kind)) {
        throw UsageError("eval: scenario '" + scenario_v +
                         "' trains on one class; pick an anomaly detector");
      }
      if (!(frac_v > 0.0 && frac_v < 1.0)) {
        throw UsageError("eval: --train-fraction must lie in (0, 1)");
      }
      const auto fm =
          hpcguard::sample_features(hpcguard::read_traceset(in_v));
      hpcguard::ScenarioSpec spec;
      spec.kind = *sk;
      spec.train_fraction = frac_v;
      spec.seed = seed_v;
      reports.push_back(hpcguard::run_supervised(
          fm, spec, hyper.build(kind, seed_v), timing_v));
      cfg["model"] = model_v;
      cfg["in"] = in_v;
      cfg["train-fraction"] = frac_v;
    }

    std::cout << hpcguard::render_text(reports);
    if (m.provided(out_opt, "out")) {
      json prov = make_provenance("eval", std::move(cfg));
      prov["seed"] = seed_v;
      const std::string comment = provenance_comment(prov);
      write_file(out_v + ".csv", comment + hpcguard::render_csv(reports));
      json wrapped{{"provenance", prov},
                   {"reports", json::parse(hpcguard::render_json(reports))}};
      write_file(out_v + ".json", wrapped.dump(2) + "\n");
      write_file(out_v + ".txt", comment + hpcguard::render_text(reports));
      std::cout << "wrote " << out_v << ".{csv,json,txt}\n";
    }
    return 0;
  }
};

// ---------------------------------------------------------------------------
// scan
// ---------------------------------------------------------------------------

struct ScanCmd {
  CLI::App* cmd = nullptr;
  std::string elf_path;
  std::string listing_path;
  std::string model_path;
  std::string features_out;
  std::size_t dim = 1024;
  std::vector<std::size_t> ngrams = {1, 2, 3};
  CLI::Option* elf_opt = nullptr;
  CLI::Option* listing_opt = nullptr;
  CLI::Option* model_opt = nullptr;
  CLI::Option* features_out_opt = nullptr;
  CLI::Option* dim_opt = nullptr;
  CLI::Option* ngrams_opt = nullptr;

  void setup(CLI::App& app) {
    cmd = app.add_subcommand(
        "scan",
        "Decode a RISC-V binary or disassembly listing into hashed opcode "
        "n-gram features, and classify it with a saved model");
    elf_opt = cmd->add_option("--elf", elf_path,
                              "ELF64 little-endian RISC-V binary");
    listing_opt = cmd->add_option(
        "--listing", listing_path,
        "Disassembly listing (\"address: bytes mnemonic ...\" lines)");
    model_opt = cmd->add_option("--model", model_path,
                                "Saved model JSON to classify with");
    features_out_opt = cmd->add_option("--features-out", features_out,
                                       "Write the hashed feature row as CSV");
    dim_opt = cmd->add_option("--dim", dim, "Hashed feature dimension")
                  ->capture_default_str();
    ngrams_opt = cmd->add_option("--ngrams", ngrams,
                                 "n-gram orders (comma separated)")
                     ->delimiter(',')
                     ->capture_default_str();
  }

  int run(const ConfigFile& cf) const {
    Merger m(cf.section("scan"));
    std::string elf_v = elf_path;
    std::string listing_v = listing_path;
    std::string model_v = model_path;
    std::string fout_v = features_out;
    std::size_t dim_v = dim;
    std::vector<std::size_t> ngrams_v = ngrams;
    m.apply(elf_opt, "elf", elf_v);
    m.apply(listing_opt, "listing", listing_v);
    m.apply(model_opt, "model", model_v);
    m.apply(features_out_opt, "features-out", fout_v);
    m.apply(dim_opt, "dim", dim_v);
    m.apply(ngrams_opt, "ngrams", ngrams_v);
    const bool have_elf = m.provided(elf_opt, "elf");
    const bool have_listing = m.provided(listing_opt, "listing");
    const bool have_model = m.provided(model_opt, "model");
    const bool have_fout = m.provided(features_out_opt, "features-out");
    if (have_elf == have_listing) {
      throw UsageError("scan: give exactly one of --elf or --listing");
    }
    if (!have_model && !have_fout) {
      throw UsageError("scan: nothing to do; give --model and/or "
                       "--features-out");
    }
    if (ngrams_v.empty()) {
      throw UsageError("scan: --ngrams must name at least one order");
    }
    for (std::size_t n : ngrams_v) {
      if (n == 0) throw UsageError("scan: n-gram orders must be positive");
    }
    if (dim_v == 0) {
      throw UsageError("scan: --dim must be positive");
    }

    const std::string input_path = have_elf ? elf_v : listing_v;
    hpcguard::OpcodeSequence seq;
    if (have_elf) {
      const auto image = hpcguard::parse_elf_file(elf_v);
      if (image.machine != hpcguard::kMachineRiscv) {
        std::cerr << "hpcguard scan: warning: ELF machine "
                  << image.machine
                  << " is not RISC-V (243); decoding as RV64 anyway\n";
      }
      seq = hpcguard::decode_opcodes(image.text);
    } else {
      seq = hpcguard::parse_disasm_listing(listing_v);
    }

    std::optional<hpcguard::TrainedModel> trained;
    if (have_model) {
      trained = hpcguard::load_model(model_v);
      if (m.provided(dim_opt, "dim")) {
        if (dim_v != trained->input_dim()) {
          throw UsageError("scan: --dim " + std::to_string(dim_v) +
                           " does not match the model input dimension " +
                           std::to_string(trained->input_dim()));
        }
      } else {
        dim_v = trained->input_dim();
      }
    }

    const auto vec = hpcguard::ngram_features(seq, ngrams_v, dim_v);
    const auto fm = hpcguard::FeatureMatrix::make(
        vec, hpcguard::ngram_feature_names(dim_v), {input_path}, {});

    if (have_fout) {
      json cfg{{"dim", dim_v}, {"ngrams", ngrams_v}, {"out", fout_v}};
      if (have_elf) {
        cfg["elf"] = elf_v;
      } else {
        cfg["listing"] = listing_v;
      }
      if (have_model) cfg["model"] = model_v;
      const json prov = make_provenance("scan", std::move(cfg));
      write_file(fout_v, provenance_comment(prov) + fm.to_csv());
      std::cout << "wrote " << fout_v << ": 1 row x " << fm.cols()
                << " features (" << seq.tokens.size() << " opcodes)\n";
    }
    if (trained) {
      const auto labels = trained->predict(fm);
      const auto scores = trained->decision_scores(fm);
      std::cout << input_path << "\t" << hpcguard::label_name(labels[0])
                << "\t" << fmt_g17(scores[0]) << "\n";
    }
    return 0;
  }
};

// ---------------------------------------------------------------------------
// report
// ---------------------------------------------------------------------------

struct ReportCmd {
  CLI::App* cmd = nullptr;
  std::string in;
  std::string format = "text";
  std::string out;
  CLI::Option* in_opt = nullptr;
  CLI::Option* format_opt = nullptr;
  CLI::Option* out_opt = nullptr;

  void setup(CLI::App& app) {
    cmd = app.add_subcommand(
        "report", "Reformat a saved report file (CSV or JSON)");
    in_opt = cmd->add_option("--in", in, "Report file (required)");
    format_opt =
        cmd->add_option("--format", format,
                        "text, csv, json, or benchmark-accuracy (one "
                        "benchmark,model,accuracy row per sbo report)")
            ->capture_default_str();
    out_opt = cmd->add_option("-o,--out", out,
                              "Output path (default: print to stdout)");
  }

  int run(const ConfigFile& cf) const {
    Merger m(cf.section("report"));
    std::string in_v = in;
    std::string format_v = format;
    std::string out_v = out;
    m.apply(in_opt, "in", in_v);
    m.apply(format_opt, "format", format_v);
    m.apply(out_opt, "out", out_v);
    if (!m.provided(in_opt, "in")) {
      throw UsageError("report: --in is required");
    }

    const std::string text = read_file(in_v);
    const std::size_t first = text.find_first_not_of(" \t\r\n");
    const bool is_json =
        first != std::string::npos &&
        (text[first] == '{' || text[first] == '[');
    const auto reports = is_json ? hpcguard::parse_report_json(text)
                                 : hpcguard::parse_report_csv(text);

    std::string rendered;
    if (format_v == "text") {
      rendered = hpcguard::render_text(reports);
    } else if (format_v == "csv") {
      rendered = hpcguard::render_csv(reports);
    } else if (format_v == "json") {
      rendered = hpcguard::render_json(reports);
    } else if (format_v == "benchmark-accuracy") {
      rendered = hpcguard::render_benchmark_accuracy_csv(reports);
    } else {
      throw UsageError("report: unknown format '" + format_v +
                       "' (expected text, csv, json, or "
                       "benchmark-accuracy)");
    }

    if (!m.provided(out_opt, "out")) {
      std::cout << rendered;
      return 0;
    }
    json cfg{{"in", in_v}, {"format", format_v}, {"out", out_v}};
    const json prov = make_provenance("report", std::move(cfg));
    if (format_v == "json") {
      json wrapped{{"provenance", prov}, {"reports", json::parse(rendered)}};
      write_file(out_v, wrapped.dump(2) + "\n");
    } else {
      write_file(out_v, provenance_comment(prov) + rendered);
    }
    std::cout << "wrote " << out_v << "\n";
    return 0;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "hpcguard: hardware-performance-counter attack detection toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", hpcguard::kVersion);
  std::string config_path;
  app.add_option("--config", config_path,
                 "JSON config file with per-subcommand sections "
                 "(explicit flags win)");

  SynthCmd synth;
  IngestCmd ingest;
  FeaturesCmd features;
  TrainCmd train;
  EvalCmd eval;
  ScanCmd scan;
  ReportCmd report;
  synth.setup(app);
  ingest.setup(app);
  features.setup(app);
  train.setup(app);
  eval.setup(app);
  scan.setup(app);
  report.setup(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints help or the parse diagnostic
    return code == 0 ? 0 : 1;
  }

  try {
    const ConfigFile cf = ConfigFile::load(config_path);
    if (synth.cmd->parsed()) return synth.run(cf);
    if (ingest.cmd->parsed()) return ingest.run(cf);
    if (features.cmd->parsed()) return features.run(cf);
    if (train.cmd->parsed()) return train.run(cf);
    if (eval.cmd->parsed()) return eval.run(cf);
    if (scan.cmd->parsed()) return scan.run(cf);
    if (report.cmd->parsed()) return report.run(cf);
  } catch (const UsageError& e) {
    std::cerr << "hpcguard: " << e.what() << "\n";
    return 1;
  } catch (const hpcguard::Error& e) {
    std::cerr << "hpcguard: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "hpcguard: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
