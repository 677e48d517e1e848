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
#ifndef HPCGUARD_SYNTH_HPP_
#define HPCGUARD_SYNTH_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hpcguard/trace.hpp"

namespace hpcguard {

// Synthetic trace generation. Counter streams are modeled as per-phase
// negative-binomial counts (over-dispersed Poisson); branch misses are a
// binomial thinning of branch instructions, which enforces the
// misses <= instructions invariant sample by sample and pins the empirical
// miss ratio to the profile value in expectation.

inline constexpr double kDefaultDispersion = 0.3;

struct EventRate {
  double mean = 0.0;        // expected count per 1 ms interval
  double dispersion = kDefaultDispersion;  // var = mean + dispersion * mean^2
};

struct Phase {
  double weight = 1.0;
  std::array<EventRate, kNumEvents> rates{};
};

// A runnable application archetype. `llc_intensity` multiplies the phase
// LLC-miss rate (cache-attack knob); `branch_miss_ratio` drives the binomial
// thinning (speculation-attack knob). The branch-miss rate entry inside
// each phase is informational only — generation always thins.
struct WorkloadProfile {
  std::string app_id;
  Label label = Label::kBenign;
  std::vector<Phase> phase_mix;
  double branch_miss_ratio = 0.01;
  double llc_intensity = 1.0;
};

// Throws InvalidHyperparam unless phase weights sum to 1 (±1e-9),
// branch_miss_ratio ∈ [0,1], llc_intensity ≥ 0, and all rates are finite
// and non-negative.
void validate_profile(const WorkloadProfile& profile);

// Stack-buffer-overflow payload model: the malicious function's standalone
// per-event rates, scaled by the fraction of host instructions it is allowed
// to consume (stealth_epsilon). The default signature is FLUSH+RELOAD-like:
// almost every payload access misses the LLC.
struct SboInjection {
  double stealth_epsilon = 0.01;
  std::array<double, kNumEvents> signature_rates{20000.0, 600.0, 15000.0,
                                                 2000.0};
};

// 14 profiles: 7 benign programs and 7 attacks. Attack signatures satisfy,
// against the benign medians, llc_intensity >= 5x (cache attacks) or
// branch_miss_ratio >= 3x (speculation attacks). Pure function.
std::vector<WorkloadProfile> make_default_roster();

// The four benign SBO host benchmarks (aes, rsa, sha, dijkstra): steady
// single-phase kernels whose LLC-miss variance is low enough that a
// stealthy injected payload shifts the per-run statistics measurably.
std::vector<WorkloadProfile> sbo_benchmark_profiles();

// Synthesizes one run of `n_samples` 1 ms intervals.
//
// All host randomness comes from Rng(run_seed). When `randomize_inputs` is
// set, a per-run rate jitter (common log-normal sigma 0.05 plus per-event
// sigma 0.01) is drawn first, modeling varying benchmark inputs. When
// `injection` is non-null, payload counts drawn from the independent
// Rng(injection_seed) stream are added on top, so the host counts are
// bit-identical with and without injection and injected counts only ever
// add (per-sample monotonicity).
Run synth_run(const WorkloadProfile& profile,
              const std::string& run_id,
              std::optional<Label> label,
              std::size_t n_samples,
              std::uint64_t run_seed,
              bool randomize_inputs = false,
              const SboInjection* injection = nullptr,
              std::uint64_t injection_seed = 0);

// One run per profile, run_id = app_id + "-r0", samples at t = 1, 2, ... ms.
// Deterministic: each run draws from Rng(mix_seed(seed, run_id)).
TraceSet generate_traces(const std::vector<WorkloadProfile>& roster,
                         std::size_t samples_per_app,
                         std::uint64_t seed);

struct SboCorpus {
  TraceSet train;
  TraceSet test;
};

// Per benchmark: `runs_train` benign runs and `runs_test` test runs, the
// first half benign and the second half carrying the injection. Run lengths
// vary in [40, 60] samples (randomized inputs). runs_test must be even and
// both counts >= 2; stealth_epsilon == 0 is RejectedDegenerate, outside
// (0, 1) is InvalidHyperparam.
SboCorpus generate_sbo_corpus(const std::vector<WorkloadProfile>& benchmarks,
                              std::size_t runs_train,
                              std::size_t runs_test,
                              const SboInjection& injection,
                              std::uint64_t seed);

}  // namespace hpcguard

#endif  // HPCGUARD_SYNTH_HPP_
