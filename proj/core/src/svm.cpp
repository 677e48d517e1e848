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
#include "hpcguard/svm.hpp"

#include <cmath>

#include "hpcguard/error.hpp"

namespace hpcguard {

namespace {

// Mutable SMO state over the training set (Platt's algorithm with a full
// error cache: E_i is exact after every step up to fp accumulation, which a
// fresh-recompute verification pass at the end makes good on).
class SmoSolver {
 public:
  SmoSolver(const FeatureMatrix& x, std::vector<double> y,
            const SvmParams& params)
      : x_(x),
        y_(std::move(y)),
        params_(params),
        n_(x.rows()),
        alpha_(x.rows(), 0.0),
        error_(x.rows(), 0.0) {
    for (std::size_t i = 0; i < n_; ++i) error_[i] = -y_[i];
  }

  void solve() {
    for (std::size_t verify_round = 0;; ++verify_round) {
      run_passes();
      // Fresh KKT audit: rebuild the error cache from the alphas and only
      // accept convergence if no violation survives.
      recompute_errors();
      bool violated = false;
      for (std::size_t i = 0; i < n_ && !violated; ++i) {
        violated = kkt_violated(i);
      }
      if (!violated) return;
      if (verify_round >= 5) {
        throw NoConvergence("svm smo (kkt audit)", verify_round);
      }
    }
  }

  const std::vector<double>& alphas() const { return alpha_; }
  double bias() const { return bias_; }

 private:
  double kernel(std::size_t i, std::size_t j) const {
    return params_.kernel(x_.row(i), x_.row(j));
  }

  bool kkt_violated(std::size_t i) const {
    const double r = error_[i] * y_[i];  // y_i f_i - 1
    return (r < -params_.tol && alpha_[i] < params_.c) ||
           (r > params_.tol && alpha_[i] > 0.0);
  }

  bool is_free(std::size_t i) const {
    return alpha_[i] > 0.0 && alpha_[i] < params_.c;
  }

  void recompute_errors() {
    for (std::size_t i = 0; i < n_; ++i) {
      double f = bias_;
      for (std::size_t j = 0; j < n_; ++j) {
        if (alpha_[j] > 0.0) f += alpha_[j] * y_[j] * kernel(j, i);
      }
      error_[i] = f - y_[i];
    }
  }

  // Platt's outer loop: alternate full sweeps with sweeps over the free
  // (non-bound) subset until a full sweep makes no progress.
  void run_passes() {
    bool examine_all = true;
    std::size_t changed = 1;
    std::size_t sweeps = 0;
    while (changed > 0 || examine_all) {
      if (++sweeps > params_.max_passes) {
        throw NoConvergence("svm smo", sweeps);
      }
      changed = 0;
      for (std::size_t i = 0; i < n_; ++i) {
        if (examine_all || is_free(i)) changed += examine(i) ? 1 : 0;
      }
      if (examine_all) {
        examine_all = false;
      } else if (changed == 0) {
        examine_all = true;
      }
    }
  }

  bool examine(std::size_t i2) {
    if (!kkt_violated(i2)) return false;

    // Second-choice heuristic: maximize |E1 - E2| over free points.
    std::size_t best = n_;
    double best_gap = -1.0;
    for (std::size_t i = 0; i < n_; ++i) {
      if (!is_free(i)) continue;
      const double gap = std::fabs(error_[i] - error_[i2]);
      if (gap > best_gap) {
        best_gap = gap;
        best = i;
      }
    }
    if (best < n_ && take_step(best, i2)) return true;
    for (std::size_t i = 0; i < n_; ++i) {
      if (is_free(i) && take_step(i, i2)) return true;
    }
    for (std::size_t i = 0; i < n_; ++i) {
      if (take_step(i, i2)) return true;
    }
    return false;
  }

  bool take_step(std::size_t i1, std::size_t i2) {
    if (i1 == i2) return false;
    const double a1_old = alpha_[i1];
    const double a2_old = alpha_[i2];
    const double y1 = y_[i1];
    const double y2 = y_[i2];
    const double e1 = error_[i1];
    const double e2 = error_[i2];
    const double s = y1 * y2;

    double lo, hi;
    if (s < 0.0) {
      lo = std::max(0.0, a2_old - a1_old);
      hi = std::min(params_.c, params_.c + a2_old - a1_old);
    } else {
      lo = std::max(0.0, a1_old + a2_old - params_.c);
      hi = std::min(params_.c, a1_old + a2_old);
    }
    if (lo >= hi) return false;

    const double k11 = kernel(i1, i1);
    const double k12 = kernel(i1, i2);
    const double k22 = kernel(i2, i2);
    const double eta = k11 + k22 - 2.0 * k12;

    double a2;
    if (eta > 0.0) {
      a2 = a2_old + y2 * (e1 - e2) / eta;
      a2 = std::min(std::max(a2, lo), hi);
    } else {
      // Flat direction: evaluate the dual objective at both clip ends.
      const double g1 = e1 + y1 - bias_;  // kernel expansion at x1
      const double g2 = e2 + y2 - bias_;
      const double v1 = g1 - a1_old * y1 * k11 - a2_old * y2 * k12;
      const double v2 = g2 - a1_old * y1 * k12 - a2_old * y2 * k22;
      auto objective = [&](double a2_cand) {
        const double a1_cand = a1_old + s * (a2_old - a2_cand);
        return a1_cand + a2_cand - 0.5 * k11 * a1_cand * a1_cand -
               0.5 * k22 * a2_cand * a2_cand -
               s * k12 * a1_cand * a2_cand - y1 * a1_cand * v1 -
               y2 * a2_cand * v2;
      };
      const double obj_lo = objective(lo);
      const double obj_hi = objective(hi);
      if (obj_lo > obj_hi + 1e-12) {
        a2 = lo;
      } else if (obj_hi > obj_lo + 1e-12) {
        a2 = hi;
      } else {
        return false;
      }
    }
    // Clipped steps leave O(1e-18) rounding residue on the multipliers; a
    // residue alpha reads as "positive" to the KKT check yet is too small
    // for any step to clear, so snap values within numerical noise of the
    // box bounds onto the exact bound.
    const double snap = 1e-12 * params_.c;
    auto snap_to_box = [&](double a) {
      if (a < snap) return 0.0;
      if (a > params_.c - snap) return params_.c;
      return a;
    };
    a2 = snap_to_box(a2);
    if (std::fabs(a2 - a2_old) < 1e-8 * (a2 + a2_old + 1e-8)) return false;
    const double a1 = snap_to_box(a1_old + s * (a2_old - a2));

    // Threshold update (keeps f exact on the optimized pair).
    const double da1 = a1 - a1_old;
    const double da2 = a2 - a2_old;
    const double b1 = bias_ - e1 - y1 * da1 * k11 - y2 * da2 * k12;
    const double b2 = bias_ - e2 - y1 * da1 * k12 - y2 * da2 * k22;
    double new_bias;
    if (a1 > 0.0 && a1 < params_.c) {
      new_bias = b1;
    } else if (a2 > 0.0 && a2 < params_.c) {
      new_bias = b2;
    } else {
      new_bias = 0.5 * (b1 + b2);
    }
    const double db = new_bias - bias_;

    alpha_[i1] = a1;
    alpha_[i2] = a2;
    bias_ = new_bias;
    for (std::size_t k = 0; k < n_; ++k) {
      error_[k] += y1 * da1 * kernel(i1, k) + y2 * da2 * kernel(i2, k) + db;
    }
    return true;
  }

  const FeatureMatrix& x_;
  std::vector<double> y_;
  SvmParams params_;
  std::size_t n_;
  std::vector<double> alpha_;
  std::vector<double> error_;
  double bias_ = 0.0;
};

}  // namespace

double SvmFit::decision_value(std::span<const double> x) const {
  if (x.size() != dim) throw DimensionMismatch(dim, x.size());
  double f = bias;
  for (std::size_t i = 0; i < n_support(); ++i) {
    f += dual_coefs[i] *
         kernel(std::span<const double>{support_vectors.data() + i * dim, dim},
                x);
  }
  return f;
}

SvmFit svm_train(const FeatureMatrix& x, const SvmParams& params) {
  const std::size_t n = x.rows();
  if (n < 2) throw SingleClass("svm needs >= 2 rows");
  if (!x.has_labels()) throw MissingLabels("svm needs labeled rows");
  if (!(params.c > 0.0)) throw InvalidHyperparam("svm C must be > 0");
  if (!(params.tol > 0.0)) throw InvalidHyperparam("svm tol must be > 0");

  std::vector<double> y(n);
  bool seen_pos = false;
  bool seen_neg = false;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& label = x.labels()[i];
    if (!label.has_value()) {
      throw MissingLabels("row " + std::to_string(i) + " is unlabeled");
    }
    y[i] = (*label == Label::kMalign) ? 1.0 : -1.0;
    (y[i] > 0.0 ? seen_pos : seen_neg) = true;
  }
  if (!seen_pos || !seen_neg) {
    throw SingleClass("svm needs both classes in training data");
  }

  SvmParams effective = params;
  if (effective.kernel.kind == KernelKind::kRbf && effective.auto_gamma) {
    effective.kernel.gamma = default_rbf_gamma(x);
  }
  if (effective.kernel.kind == KernelKind::kRbf &&
      !(effective.kernel.gamma > 0.0)) {
    throw InvalidHyperparam("rbf gamma must be > 0");
  }

  SmoSolver solver(x, std::move(y), effective);
  solver.solve();

  SvmFit fit;
  fit.kernel = effective.kernel;
  fit.c = effective.c;
  fit.tol = effective.tol;
  fit.dim = x.cols();
  fit.bias = solver.bias();
  for (std::size_t i = 0; i < n; ++i) {
    if (solver.alphas()[i] > 0.0) {
      const auto row = x.row(i);
      fit.support_vectors.insert(fit.support_vectors.end(), row.begin(),
                                 row.end());
      const double yi =
          (*x.labels()[i] == Label::kMalign) ? 1.0 : -1.0;
      fit.dual_coefs.push_back(solver.alphas()[i] * yi);
    }
  }
  return fit;
}

}  // namespace hpcguard
