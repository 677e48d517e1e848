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
#include "hpcguard/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>
#include <utility>

#include "hpcguard/error.hpp"
#include "hpcguard/linalg.hpp"
#include "hpcguard/rng.hpp"
#include "hpcguard/stats.hpp"

namespace hpcguard {
namespace {

constexpr std::size_t kMaxCSteps = 200;
constexpr std::size_t kMaxSubsetRedraws = 10;
constexpr double kDetTol = 1e-12;
constexpr double kRidgeScale = 1e-9;

struct Estimate {
  std::vector<double> mean;  // d
  std::vector<double> cov;   // d x d
  std::vector<double> chol;  // lower factor
  double logdet = 0.0;
};

// Population mean/covariance over the given rows.
void fit_moments(const FeatureMatrix& x, std::span<const std::size_t> rows,
                 std::vector<double>& mean, std::vector<double>& cov) {
  const std::size_t d = x.cols();
  const double m = static_cast<double>(rows.size());
  mean.assign(d, 0.0);
  for (const std::size_t r : rows) {
    for (std::size_t c = 0; c < d; ++c) mean[c] += x.at(r, c);
  }
  for (std::size_t c = 0; c < d; ++c) mean[c] /= m;
  cov.assign(d * d, 0.0);
  std::vector<double> diff(d);
  for (const std::size_t r : rows) {
    for (std::size_t c = 0; c < d; ++c) diff[c] = x.at(r, c) - mean[c];
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = i; j < d; ++j) cov[i * d + j] += diff[i] * diff[j];
    }
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j < d; ++j) {
      cov[i * d + j] /= m;
      cov[j * d + i] = cov[i * d + j];
    }
  }
}

// Cholesky with a one-shot diagonal ridge fallback (1e-9 * trace / d).
std::optional<std::vector<double>> factor_with_ridge(std::vector<double> cov,
                                                     std::size_t d) {
  try {
    return cholesky_factor(cov, d);
  } catch (const SingularCovariance&) {
  }
  double trace = 0.0;
  for (std::size_t i = 0; i < d; ++i) trace += cov[i * d + i];
  const double ridge = kRidgeScale * trace / static_cast<double>(d);
  if (!(ridge > 0.0)) return std::nullopt;
  for (std::size_t i = 0; i < d; ++i) cov[i * d + i] += ridge;
  try {
    return cholesky_factor(cov, d);
  } catch (const SingularCovariance&) {
    return std::nullopt;
  }
}

double squared_mahalanobis(std::span<const double> q,
                           const std::vector<double>& mean,
                           const std::vector<double>& chol, std::size_t d) {
  std::vector<double> diff(d);
  for (std::size_t c = 0; c < d; ++c) diff[c] = q[c] - mean[c];
  const std::vector<double> solved = cholesky_solve(chol, d, diff);
  double s = 0.0;
  for (std::size_t c = 0; c < d; ++c) s += diff[c] * solved[c];
  return std::max(s, 0.0);
}

// Indices of the h smallest distances, ties broken by ascending row index.
std::vector<std::size_t> h_smallest(const std::vector<double>& dist,
                                    std::size_t h) {
  std::vector<std::size_t> order(dist.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (dist[a] != dist[b]) return dist[a] < dist[b];
    return a < b;
  });
  order.resize(h);
  std::sort(order.begin(), order.end());
  return order;
}

struct RestartResult {
  Estimate estimate;
  std::vector<double> logdets;  // one per C-step refit
};

// One restart: random (d+1)-subset seed, then C-steps to a fixed point.
// Returns nullopt when every factorization attempt fails.
std::optional<RestartResult> run_restart(const FeatureMatrix& x, std::size_t h,
                                         Rng& rng) {
  const std::size_t n = x.rows();
  const std::size_t d = x.cols();

  Estimate est;
  bool seeded = false;
  std::vector<std::size_t> pool(n);
  for (std::size_t attempt = 0; attempt <= kMaxSubsetRedraws; ++attempt) {
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    for (std::size_t i = 0; i < d + 1; ++i) {
      const std::size_t j =
          i + static_cast<std::size_t>(
                  rng.uniform_int(static_cast<std::uint64_t>(n - i)));
      std::swap(pool[i], pool[j]);
    }
    std::vector<std::size_t> subset(pool.begin(),
                                    pool.begin() +
                                        static_cast<std::ptrdiff_t>(d + 1));
    fit_moments(x, subset, est.mean, est.cov);
    if (auto chol = factor_with_ridge(est.cov, d)) {
      est.chol = std::move(*chol);
      seeded = true;
      break;
    }
  }
  if (!seeded) return std::nullopt;

  RestartResult result;
  std::vector<double> dist(n);
  double prev_logdet = 0.0;
  bool have_prev = false;
  for (std::size_t step = 0; step < kMaxCSteps; ++step) {
    for (std::size_t i = 0; i < n; ++i) {
      dist[i] = squared_mahalanobis(x.row(i), est.mean, est.chol, d);
    }
    const std::vector<std::size_t> subset = h_smallest(dist, h);
    Estimate next;
    fit_moments(x, subset, next.mean, next.cov);
    auto chol = factor_with_ridge(next.cov, d);
    if (!chol) return std::nullopt;
    next.chol = std::move(*chol);
    next.logdet = cholesky_logdet(next.chol, d);
    result.logdets.push_back(next.logdet);
    est = std::move(next);
    if (have_prev && std::abs(prev_logdet - est.logdet) < kDetTol) break;
    prev_logdet = est.logdet;
    have_prev = true;
  }
  result.estimate = std::move(est);
  return result;
}

}  // namespace

double EllipticFit::score(std::span<const double> q) const {
  if (q.size() != dim) throw DimensionMismatch(dim, q.size());
  return squared_mahalanobis(q, mean, chol, dim);
}

EllipticFit elliptic_fit(const FeatureMatrix& x, const EllipticParams& params) {
  const std::size_t n = x.rows();
  const std::size_t d = x.cols();
  if (d == 0) throw EmptyMatrix("elliptic envelope needs at least one column");
  if (n < 2 * (d + 1)) {
    throw TooFewPoints("elliptic envelope requires n >= 2(d+1) (n=" +
                       std::to_string(n) + ", d=" + std::to_string(d) + ")");
  }
  if (!(params.contamination > 0.0) || !(params.contamination <= 0.5)) {
    throw InvalidHyperparam("contamination must lie in (0, 0.5]");
  }
  if (params.n_restarts == 0) {
    throw InvalidHyperparam("elliptic envelope needs at least one restart");
  }

  const std::size_t h = (n + d + 1) / 2;
  Rng rng(params.seed);

  EllipticFit fit;
  fit.contamination = params.contamination;
  fit.seed = params.seed;
  fit.dim = d;

  std::optional<Estimate> best;
  for (std::size_t r = 0; r < params.n_restarts; ++r) {
    auto restart = run_restart(x, h, rng);
    if (!restart) continue;
    fit.restart_logdets.push_back(std::move(restart->logdets));
    if (!best || restart->estimate.logdet < best->logdet) {
      best = std::move(restart->estimate);
    }
  }
  if (!best) {
    throw SingularCovariance(
        "all elliptic restarts produced singular covariance estimates");
  }

  // Consistency correction: the raw MCD covariance is fit on the densest
  // half, which shrinks its scale. Rescale so the empirical
  // (1 - contamination) quantile of the squared distances over the full
  // sample matches the chi-square quantile the threshold uses. On clean
  // Gaussian data this is the usual Fisher consistency factor; on anything
  // heavier-tailed it calibrates exactly the tail the threshold cuts, so
  // the training false-alarm rate equals the contamination.
  std::vector<double> dist(n);
  for (std::size_t i = 0; i < n; ++i) {
    dist[i] = squared_mahalanobis(x.row(i), best->mean, best->chol, d);
  }
  std::vector<double> sorted = dist;
  std::sort(sorted.begin(), sorted.end());
  const double keep = 1.0 - params.contamination;
  std::size_t qi = static_cast<std::size_t>(
      std::ceil(keep * static_cast<double>(n)));
  qi = std::min(std::max<std::size_t>(qi, 1), n) - 1;
  const double quantile = sorted[qi];
  const double chi_quantile = chi2_quantile(keep, d);
  double factor = 1.0;
  if (quantile > 0.0 && chi_quantile > 0.0) factor = quantile / chi_quantile;

  fit.mean = std::move(best->mean);
  fit.covariance = std::move(best->cov);
  for (double& v : fit.covariance) v *= factor;
  auto chol = factor_with_ridge(fit.covariance, d);
  if (!chol) {
    throw SingularCovariance(
        "corrected elliptic covariance is not positive definite");
  }
  fit.chol = std::move(*chol);
  fit.threshold = chi2_quantile(1.0 - params.contamination, d);
  return fit;
}

}  // namespace hpcguard
