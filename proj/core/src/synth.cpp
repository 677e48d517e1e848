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
#include "hpcguard/synth.hpp"

#include <cmath>

#include "hpcguard/error.hpp"
#include "hpcguard/rng.hpp"

namespace hpcguard {

namespace {

constexpr std::size_t kBi = static_cast<std::size_t>(
    EventKind::kBranchInstructions);
constexpr std::size_t kBm = static_cast<std::size_t>(EventKind::kBranchMisses);
constexpr std::size_t kLlc = static_cast<std::size_t>(
    EventKind::kLlcLoadMisses);
constexpr std::size_t kL1d = static_cast<std::size_t>(
    EventKind::kL1dLoadMisses);

// Attack payloads run tight, regular loops; their counters are far less
// over-dispersed than general-purpose code.
constexpr double kAttackDispersion = 0.1;
constexpr double kInjectionDispersion = 0.1;

Phase make_phase(double weight, double bi, double llc, double l1,
                 double bmr, double dispersion) {
  Phase phase;
  phase.weight = weight;
  phase.rates[kBi] = {bi, dispersion};
  phase.rates[kBm] = {bi * bmr, dispersion};  // informational; thinning rules
  phase.rates[kLlc] = {llc, dispersion};
  phase.rates[kL1d] = {l1, dispersion};
  return phase;
}

WorkloadProfile make_profile(std::string app_id, Label label, double bmr,
                             double llc_intensity, double dispersion,
                             std::vector<std::array<double, 4>> phases) {
  WorkloadProfile profile;
  profile.app_id = std::move(app_id);
  profile.label = label;
  profile.branch_miss_ratio = bmr;
  profile.llc_intensity = llc_intensity;
  for (const auto& p : phases) {
    profile.phase_mix.push_back(
        make_phase(p[0], p[1], p[2], p[3], bmr, dispersion));
  }
  return profile;
}

void validate_injection(const SboInjection& inj) {
  if (inj.stealth_epsilon == 0.0) {
    throw RejectedDegenerate("stealth_epsilon 0 injects no signal");
  }
  if (!(inj.stealth_epsilon > 0.0) || !(inj.stealth_epsilon < 1.0)) {
    throw InvalidHyperparam("stealth_epsilon must lie in (0, 1)");
  }
  for (double r : inj.signature_rates) {
    if (!(r >= 0.0) || !std::isfinite(r)) {
      throw InvalidHyperparam("injection signature rates must be >= 0");
    }
  }
  if (inj.signature_rates[kBm] > inj.signature_rates[kBi]) {
    throw InvalidHyperparam(
        "injection branch-miss rate exceeds branch-instruction rate");
  }
}

}  // namespace

void validate_profile(const WorkloadProfile& profile) {
  if (profile.phase_mix.empty()) {
    throw InvalidHyperparam(profile.app_id + ": profile needs >= 1 phase");
  }
  double weight_sum = 0.0;
  for (const Phase& phase : profile.phase_mix) {
    if (!(phase.weight >= 0.0) || !std::isfinite(phase.weight)) {
      throw InvalidHyperparam(profile.app_id + ": phase weight must be >= 0");
    }
    weight_sum += phase.weight;
    for (const EventRate& rate : phase.rates) {
      if (!(rate.mean >= 0.0) || !std::isfinite(rate.mean) ||
          !(rate.dispersion >= 0.0) || !std::isfinite(rate.dispersion)) {
        throw InvalidHyperparam(profile.app_id + ": bad event rate");
      }
    }
  }
  if (std::fabs(weight_sum - 1.0) > 1e-9) {
    throw InvalidHyperparam(profile.app_id + ": phase weights must sum to 1");
  }
  if (!(profile.branch_miss_ratio >= 0.0) ||
      !(profile.branch_miss_ratio <= 1.0)) {
    throw InvalidHyperparam(profile.app_id +
                            ": branch_miss_ratio must lie in [0, 1]");
  }
  if (!(profile.llc_intensity >= 0.0) ||
      !std::isfinite(profile.llc_intensity)) {
    throw InvalidHyperparam(profile.app_id + ": llc_intensity must be >= 0");
  }
}

std::vector<WorkloadProfile> make_default_roster() {
  // Benign llc_intensity median is 1.2 and branch_miss_ratio median 0.018;
  // every attack clears 5x the former or 3x the latter (most clear both
  // margins comfortably, so the roster property holds with slack).
  std::vector<WorkloadProfile> roster;
  const double bd = kDefaultDispersion;
  const double ad = kAttackDispersion;

  // phases: {weight, branch-instructions/ms, llc-misses/ms, l1d-misses/ms}
  roster.push_back(make_profile("matmul", Label::kBenign, 0.012, 1.0, bd,
                                {{0.6, 3000, 150, 400}, {0.4, 2000, 300, 800}}));
  roster.push_back(make_profile("stress", Label::kBenign, 0.020, 1.6, bd,
                                {{1.0, 4000, 250, 600}}));
  roster.push_back(make_profile("bitcount", Label::kBenign, 0.015, 0.6, bd,
                                {{0.5, 5000, 80, 150}, {0.5, 4500, 120, 200}}));
  roster.push_back(make_profile("stream", Label::kBenign, 0.008, 2.0, bd,
                                {{1.0, 1500, 400, 900}}));
  roster.push_back(make_profile("bzip2", Label::kBenign, 0.025, 1.4, bd,
                                {{0.3, 2500, 200, 500}, {0.7, 3500, 280, 700}}));
  roster.push_back(make_profile("ffmpeg", Label::kBenign, 0.018, 1.2, bd,
                                {{0.25, 2000, 180, 450},
                                 {0.5, 3200, 240, 600},
                                 {0.25, 2600, 210, 520}}));
  roster.push_back(make_profile("qsort", Label::kBenign, 0.030, 0.8, bd,
                                {{0.5, 2800, 100, 350}, {0.5, 2200, 140, 420}}));

  roster.push_back(make_profile("meltdown", Label::kMalign, 0.020, 14.0, ad,
                                {{1.0, 2500, 700, 800}}));
  roster.push_back(make_profile("spectre-v1", Label::kMalign, 0.105, 7.0, ad,
                                {{0.5, 3000, 500, 600}, {0.5, 3500, 450, 550}}));
  roster.push_back(make_profile("spectre-v2", Label::kMalign, 0.140, 6.5, ad,
                                {{1.0, 3200, 480, 580}}));
  roster.push_back(make_profile("spectre-v4", Label::kMalign, 0.090, 6.2, ad,
                                {{1.0, 2800, 520, 620}}));
  roster.push_back(make_profile("zombieload", Label::kMalign, 0.060, 11.0, ad,
                                {{1.0, 2600, 650, 1400}}));
  roster.push_back(make_profile("fallout", Label::kMalign, 0.058, 9.0, ad,
                                {{1.0, 2400, 600, 1200}}));
  roster.push_back(make_profile("crosstalk", Label::kMalign, 0.030, 12.0, ad,
                                {{0.6, 2200, 620, 700}, {0.4, 2700, 680, 750}}));

  for (const auto& profile : roster) validate_profile(profile);
  return roster;
}

std::vector<WorkloadProfile> sbo_benchmark_profiles() {
  std::vector<WorkloadProfile> benchmarks;
  benchmarks.push_back(make_profile("aes", Label::kBenign, 0.010, 1.0, 0.1,
                                    {{1.0, 2500, 150, 500}}));
  benchmarks.push_back(make_profile("rsa", Label::kBenign, 0.015, 1.0, 0.12,
                                    {{1.0, 2000, 220, 900}}));
  benchmarks.push_back(make_profile("sha", Label::kBenign, 0.008, 1.0, 0.1,
                                    {{1.0, 3500, 100, 300}}));
  benchmarks.push_back(make_profile("dijkstra", Label::kBenign, 0.020, 1.0,
                                    0.1, {{1.0, 2800, 250, 700}}));
  for (const auto& profile : benchmarks) validate_profile(profile);
  return benchmarks;
}

Run synth_run(const WorkloadProfile& profile,
              const std::string& run_id,
              std::optional<Label> label,
              std::size_t n_samples,
              std::uint64_t run_seed,
              bool randomize_inputs,
              const SboInjection* injection,
              std::uint64_t injection_seed) {
  validate_profile(profile);
  if (n_samples == 0) throw InvalidHyperparam("n_samples must be >= 1");
  if (injection != nullptr) validate_injection(*injection);

  Rng rng(run_seed);

  std::array<double, kNumEvents> jitter{1.0, 1.0, 1.0, 1.0};
  if (randomize_inputs) {
    const double common = std::exp(0.05 * rng.normal());
    for (auto& j : jitter) j = common * std::exp(0.01 * rng.normal());
  }

  std::vector<double> weights;
  weights.reserve(profile.phase_mix.size());
  for (const Phase& phase : profile.phase_mix) weights.push_back(phase.weight);

  std::optional<Rng> inj_rng;
  if (injection != nullptr) inj_rng.emplace(injection_seed);

  std::vector<HpcSample> samples;
  samples.reserve(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) {
    const Phase& phase = profile.phase_mix[rng.categorical(weights)];

    const std::uint64_t bi = rng.negative_binomial(
        phase.rates[kBi].mean * jitter[kBi], phase.rates[kBi].dispersion);
    const std::uint64_t bm = rng.binomial(bi, profile.branch_miss_ratio);
    const std::uint64_t llc = rng.negative_binomial(
        phase.rates[kLlc].mean * profile.llc_intensity * jitter[kLlc],
        phase.rates[kLlc].dispersion);
    const std::uint64_t l1 = rng.negative_binomial(
        phase.rates[kL1d].mean * jitter[kL1d], phase.rates[kL1d].dispersion);

    Counts counts{bi, bm, llc, l1};
    if (injection != nullptr) {
      const double eps = injection->stealth_epsilon;
      const std::uint64_t bi_extra = inj_rng->negative_binomial(
          injection->signature_rates[kBi] * eps, kInjectionDispersion);
      const double payload_bmr =
          injection->signature_rates[kBi] > 0.0
              ? injection->signature_rates[kBm] /
                    injection->signature_rates[kBi]
              : 0.0;
      counts[kBi] += bi_extra;
      counts[kBm] += inj_rng->binomial(bi_extra, payload_bmr);
      counts[kLlc] += inj_rng->negative_binomial(
          injection->signature_rates[kLlc] * eps, kInjectionDispersion);
      counts[kL1d] += inj_rng->negative_binomial(
          injection->signature_rates[kL1d] * eps, kInjectionDispersion);
    }

    samples.emplace_back(static_cast<double>(i + 1), counts, label,
                         profile.app_id);
  }
  return Run{run_id, profile.app_id, label, std::move(samples)};
}

TraceSet generate_traces(const std::vector<WorkloadProfile>& roster,
                         std::size_t samples_per_app,
                         std::uint64_t seed) {
  if (samples_per_app == 0) {
    throw InvalidHyperparam("samples_per_app must be >= 1");
  }
  if (roster.empty()) throw InvalidHyperparam("roster must not be empty");

  std::vector<Run> runs;
  runs.reserve(roster.size());
  for (const WorkloadProfile& profile : roster) {
    const std::string run_id = profile.app_id + "-r0";
    runs.push_back(synth_run(profile, run_id, profile.label, samples_per_app,
                             mix_seed(seed, run_id)));
  }
  return TraceSet::make(std::move(runs), TraceSource::kSynthetic, seed);
}

SboCorpus generate_sbo_corpus(const std::vector<WorkloadProfile>& benchmarks,
                              std::size_t runs_train,
                              std::size_t runs_test,
                              const SboInjection& injection,
                              std::uint64_t seed) {
  if (benchmarks.empty()) {
    throw InvalidHyperparam("need at least one benchmark profile");
  }
  if (runs_train < 2 || runs_test < 2) {
    throw InvalidHyperparam("runs_train and runs_test must be >= 2");
  }
  if (runs_test % 2 != 0) {
    throw InvalidHyperparam("runs_test must be even for the 50/50 test split");
  }
  validate_injection(injection);

  std::vector<Run> train_runs;
  std::vector<Run> test_runs;
  train_runs.reserve(benchmarks.size() * runs_train);
  test_runs.reserve(benchmarks.size() * runs_test);

  auto run_length = [&](const std::string& run_id) {
    Rng len_rng(mix_seed(seed, run_id + "/len"));
    return static_cast<std::size_t>(40 + len_rng.uniform_int(21));
  };

  for (const WorkloadProfile& profile : benchmarks) {
    for (std::size_t i = 0; i < runs_train; ++i) {
      const std::string run_id =
          profile.app_id + "-train-r" + std::to_string(i);
      train_runs.push_back(synth_run(profile, run_id, Label::kBenign,
                                     run_length(run_id),
                                     mix_seed(seed, run_id),
                                     /*randomize_inputs=*/true));
    }
    for (std::size_t i = 0; i < runs_test; ++i) {
      const std::string run_id = profile.app_id + "-test-r" + std::to_string(i);
      const bool attacked = i >= runs_test / 2;
      test_runs.push_back(synth_run(
          profile, run_id, attacked ? Label::kMalign : Label::kBenign,
          run_length(run_id), mix_seed(seed, run_id),
          /*randomize_inputs=*/true, attacked ? &injection : nullptr,
          mix_seed(seed, run_id + "/inj")));
    }
  }

  SboCorpus corpus;
  corpus.train = TraceSet::make(std::move(train_runs), TraceSource::kSynthetic,
                                seed);
  corpus.test = TraceSet::make(std::move(test_runs), TraceSource::kSynthetic,
                               seed);
  return corpus;
}

}  // namespace hpcguard
