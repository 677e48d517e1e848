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
#include "hpcguard/iforest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hpcguard/error.hpp"
#include "hpcguard/rng.hpp"
#include "hpcguard/stats.hpp"

namespace hpcguard {
namespace {

constexpr int kMaxSplitRedraws = 8;

struct TreeBuilder {
  const FeatureMatrix& x;
  std::size_t height_limit;
  Rng& rng;
  std::vector<IforestNode> nodes;

  // Builds the subtree over rows[begin, end); returns its node index.
  std::int32_t build(std::vector<std::size_t>& rows, std::size_t begin,
                     std::size_t end, std::size_t depth) {
    const std::size_t m = end - begin;
    if (m <= 1 || depth >= height_limit) return make_external(m);

    // Columns that still vary inside this slice.
    const std::size_t d = x.cols();
    std::vector<std::size_t> eligible;
    std::vector<double> lows(d), highs(d);
    for (std::size_t c = 0; c < d; ++c) {
      double lo = x.at(rows[begin], c), hi = lo;
      for (std::size_t r = begin + 1; r < end; ++r) {
        const double v = x.at(rows[r], c);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      lows[c] = lo;
      highs[c] = hi;
      if (hi > lo) eligible.push_back(c);
    }
    if (eligible.empty()) return make_external(m);

    const std::size_t c =
        eligible[rng.uniform_int(static_cast<std::uint64_t>(eligible.size()))];
    const double lo = lows[c], hi = highs[c];
    double split = lo;
    bool ok = false;
    for (int attempt = 0; attempt <= kMaxSplitRedraws; ++attempt) {
      split = lo + rng.uniform() * (hi - lo);
      if (split > lo && split < hi) {
        ok = true;
        break;
      }
    }
    if (!ok) return make_external(m);

    // Partition the slice in place: left gets value < split.
    std::size_t mid = begin;
    for (std::size_t r = begin; r < end; ++r) {
      if (x.at(rows[r], c) < split) std::swap(rows[mid++], rows[r]);
    }
    // split in (lo, hi) guarantees both sides are non-empty.
    const std::int32_t self = static_cast<std::int32_t>(nodes.size());
    nodes.push_back(IforestNode{static_cast<std::int32_t>(c), split, -1, -1,
                                0.0});
    const std::int32_t left = build(rows, begin, mid, depth + 1);
    const std::int32_t right = build(rows, mid, end, depth + 1);
    nodes[static_cast<std::size_t>(self)].left = left;
    nodes[static_cast<std::size_t>(self)].right = right;
    return self;
  }

  std::int32_t make_external(std::size_t size) {
    const std::int32_t self = static_cast<std::int32_t>(nodes.size());
    nodes.push_back(IforestNode{
        -1, 0.0, -1, -1, average_path_length(size)});
    return self;
  }
};

}  // namespace

double IforestTree::path_length(std::span<const double> q) const {
  std::size_t idx = 0;
  double depth = 0.0;
  while (nodes[idx].feature >= 0) {
    const auto& node = nodes[idx];
    idx = static_cast<std::size_t>(
        q[static_cast<std::size_t>(node.feature)] < node.split ? node.left
                                                               : node.right);
    depth += 1.0;
  }
  return depth + nodes[idx].leaf_term;
}

double IforestFit::score(std::span<const double> q) const {
  if (q.size() != dim) throw DimensionMismatch(dim, q.size());
  double sum = 0.0;
  for (const auto& tree : trees) sum += tree.path_length(q);
  const double mean_path = sum / static_cast<double>(trees.size());
  return std::exp2(-mean_path / normalizer);
}

IforestFit iforest_fit(const FeatureMatrix& x, const IforestParams& params) {
  const std::size_t n = x.rows();
  if (n < 2) throw EmptyMatrix("isolation forest requires at least 2 rows");
  if (params.n_trees == 0) {
    throw InvalidHyperparam("isolation forest needs at least one tree");
  }
  if (params.subsample < 2) {
    throw InvalidHyperparam("isolation forest subsample must be >= 2");
  }
  if (!(params.contamination > 0.0) || !(params.contamination < 1.0)) {
    throw InvalidHyperparam("contamination must lie in (0, 1)");
  }

  const std::size_t psi = std::min(params.subsample, n);
  const std::size_t height_limit = static_cast<std::size_t>(
      std::ceil(std::log2(static_cast<double>(psi))));

  IforestFit fit;
  fit.subsample = psi;
  fit.contamination = params.contamination;
  fit.seed = params.seed;
  fit.dim = x.cols();
  fit.normalizer = average_path_length(psi);
  fit.trees.reserve(params.n_trees);

  Rng rng(params.seed);
  std::vector<std::size_t> pool(n);
  for (std::size_t t = 0; t < params.n_trees; ++t) {
    // Subsample psi rows without replacement (partial Fisher-Yates).
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    for (std::size_t i = 0; i < psi; ++i) {
      const std::size_t j =
          i + static_cast<std::size_t>(
                  rng.uniform_int(static_cast<std::uint64_t>(n - i)));
      std::swap(pool[i], pool[j]);
    }
    std::vector<std::size_t> rows(pool.begin(),
                                  pool.begin() + static_cast<std::ptrdiff_t>(psi));
    TreeBuilder builder{x, height_limit, rng, {}};
    builder.build(rows, 0, psi, 0);
    fit.trees.push_back(IforestTree{std::move(builder.nodes)});
  }

  fit.train_scores.resize(n);
  for (std::size_t i = 0; i < n; ++i) fit.train_scores[i] = fit.score(x.row(i));

  // Threshold at the (1 - contamination) quantile of training scores; about
  // a contamination fraction of the training set scores strictly above it.
  std::vector<double> sorted = fit.train_scores;
  std::sort(sorted.begin(), sorted.end());
  const double rank =
      std::ceil((1.0 - params.contamination) * static_cast<double>(n));
  const std::size_t idx = static_cast<std::size_t>(
      std::max(0.0, rank - 1.0));
  fit.threshold = sorted[std::min(idx, n - 1)];
  return fit;
}

}  // namespace hpcguard
