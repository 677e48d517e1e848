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

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include <doctest.h>

#include "hpcguard/error.hpp"
#include "hpcguard/pca.hpp"
#include "hpcguard/ranking.hpp"
#include "hpcguard/rng.hpp"

#include "test_util.hpp"

using namespace hpcguard;
using testutil::gaussian_mat;
using testutil::make_mat;

TEST_CASE("pca components are orthonormal and variances complete") {
  const FeatureMatrix x = gaussian_mat(120, 4, 21);
  const PcaModel pca = PcaModel::fit(x, 1.0);
  const std::size_t k = pca.n_components();
  const std::size_t d = pca.input_dim();
  REQUIRE(k == 4);
  REQUIRE(d == 4);

  const auto& w = pca.components();
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      double dot = 0.0;
      for (std::size_t j = 0; j < d; ++j) dot += w[a * d + j] * w[b * d + j];
      CHECK(std::fabs(dot - (a == b ? 1.0 : 0.0)) < 1e-8);
    }
  }

  // Explained variances are descending and sum to the total.
  double sum = 0.0;
  for (std::size_t a = 0; a < k; ++a) {
    if (a + 1 < k) {
      CHECK(pca.explained_variance()[a] >= pca.explained_variance()[a + 1]);
    }
    sum += pca.explained_variance()[a];
  }
  CHECK(sum == doctest::Approx(pca.total_variance()).epsilon(1e-8));

  // Sign convention: the largest-magnitude entry of each component is
  // positive, making the decomposition unique.
  for (std::size_t a = 0; a < k; ++a) {
    double best = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      if (std::fabs(w[a * d + j]) > std::fabs(best)) best = w[a * d + j];
    }
    CHECK(best > 0.0);
  }
}

TEST_CASE("pca full-rank reconstruction is exact to 1e-8") {
  const FeatureMatrix x = gaussian_mat(80, 5, 22);
  const PcaModel pca = PcaModel::fit(x, 1.0);
  const FeatureMatrix z = pca.transform(x);
  REQUIRE(z.cols() == 5);
  CHECK(z.feature_names()[0] == "pc0");
  const FeatureMatrix back = pca.inverse_transform(z);
  REQUIRE(back.rows() == x.rows());
  double worst = 0.0;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t j = 0; j < x.cols(); ++j) {
      worst = std::max(worst, std::fabs(back.at(i, j) - x.at(i, j)));
    }
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("pca transform matches the hand-computed projection") {
  // Four points on a line y = 2x => single dominant component.
  const FeatureMatrix x =
      make_mat({{-1.0, -2.0}, {0.0, 0.0}, {1.0, 2.0}, {2.0, 4.0}});
  const PcaModel pca = PcaModel::fit(x, 1.0);
  const auto& w = pca.components();
  // First component is (1, 2)/sqrt(5) (sign fixed positive).
  CHECK(w[0] == doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-8));
  CHECK(w[1] == doctest::Approx(2.0 / std::sqrt(5.0)).epsilon(1e-8));
  // Second explains zero variance.
  CHECK(pca.explained_variance()[1] == doctest::Approx(0.0).epsilon(1e-12));

  const FeatureMatrix z = pca.transform(x);
  // Mean is (0.5, 1.0); projection of (-1,-2): (-1.5, -3)·(1,2)/sqrt5.
  CHECK(z.at(0, 0) == doctest::Approx(-7.5 / std::sqrt(5.0)).epsilon(1e-8));
}

TEST_CASE("variance target controls the retained dimensionality") {
  // x1 dominant, x2 = x1 plus small independent noise: one component
  // carries almost all variance.
  Rng rng(5);
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < 200; ++i) {
    const double a = rng.normal();
    rows.push_back({a, a + 0.01 * rng.normal()});
  }
  const FeatureMatrix x = make_mat(rows);
  CHECK(PcaModel::fit(x, 0.9).n_components() == 1);
  CHECK(PcaModel::fit(x, 1.0).n_components() == 2);
}

TEST_CASE("pca rejects degenerate inputs") {
  const FeatureMatrix tiny = make_mat({{1.0, 2.0}});
  CHECK_THROWS_AS(PcaModel::fit(tiny, 1.0), EmptyMatrix);
  const FeatureMatrix ok = gaussian_mat(10, 2, 3);
  CHECK_THROWS_AS(PcaModel::fit(ok, 0.0), InvalidHyperparam);
  CHECK_THROWS_AS(PcaModel::fit(ok, 1.5), InvalidHyperparam);
}

TEST_CASE("fisher score matches the two-cluster closed form") {
  // Classes {0, 0.1} and {1, 1.1} on one feature:
  // numerator 1.0, denominator 0.01 + 1e-12.
  const FeatureMatrix x = make_mat(
      {{0.0}, {0.1}, {1.0}, {1.1}},
      {Label::kBenign, Label::kBenign, Label::kMalign, Label::kMalign});
  const std::vector<double> f = fisher_scores(x);
  REQUIRE(f.size() == 1);
  CHECK(f[0] == doctest::Approx(99.9999999899999).epsilon(1e-9));
}

TEST_CASE("fisher ranks the informative feature above noise") {
  Rng rng(9);
  std::vector<std::vector<double>> rows;
  std::vector<std::optional<Label>> labels;
  for (int i = 0; i < 200; ++i) {
    const bool malign = i % 2 == 1;
    rows.push_back({(malign ? 4.0 : 0.0) + rng.normal(), rng.normal()});
    labels.emplace_back(malign ? Label::kMalign : Label::kBenign);
  }
  const std::vector<double> f = fisher_scores(make_mat(rows, labels));
  CHECK(f[0] > 10.0 * f[1]);
}

TEST_CASE("information gain is 1 bit for a clean separator, 0 for a constant") {
  const FeatureMatrix x = make_mat(
      {{0.0, 7.0}, {0.1, 7.0}, {1.0, 7.0}, {1.1, 7.0}},
      {Label::kBenign, Label::kBenign, Label::kMalign, Label::kMalign});
  const std::vector<double> ig = information_gain(x, 10);
  REQUIRE(ig.size() == 2);
  // Balanced labels => H = 1 bit; feature 0 separates perfectly.
  CHECK(ig[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ig[1] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("rankings demand two classes with enough rows") {
  const FeatureMatrix unlabeled = make_mat({{1.0}, {2.0}, {3.0}, {4.0}});
  CHECK_THROWS_AS(fisher_scores(unlabeled), MissingLabels);
  CHECK_THROWS_AS(information_gain(unlabeled), MissingLabels);

  const FeatureMatrix single = make_mat(
      {{1.0}, {2.0}, {3.0}},
      {Label::kBenign, Label::kBenign, Label::kBenign});
  CHECK_THROWS_AS(fisher_scores(single), SingleClass);

  const FeatureMatrix lopsided = make_mat(
      {{1.0}, {2.0}, {3.0}},
      {Label::kBenign, Label::kBenign, Label::kMalign});
  CHECK_THROWS_AS(fisher_scores(lopsided), SingleClass);

  const FeatureMatrix ok = make_mat(
      {{1.0}, {2.0}, {3.0}, {4.0}},
      {Label::kBenign, Label::kBenign, Label::kMalign, Label::kMalign});
  CHECK_THROWS_AS(information_gain(ok, 0), InvalidHyperparam);
}
