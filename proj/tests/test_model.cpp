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

#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <doctest.h>

#include "hpcguard/error.hpp"
#include "hpcguard/model.hpp"
#include "hpcguard/rng.hpp"

#include "test_util.hpp"

using namespace hpcguard;
using testutil::gaussian_mat;
using testutil::make_mat;

namespace {

FeatureMatrix labeled_blobs(std::size_t n, std::uint64_t seed,
                            double gap = 5.0) {
  Rng rng(seed);
  std::vector<std::vector<double>> rows;
  std::vector<std::optional<Label>> labels;
  for (std::size_t i = 0; i < n; ++i) {
    const bool malign = i % 2 == 1;
    rows.push_back({(malign ? gap : 0.0) + rng.normal(), rng.normal()});
    labels.emplace_back(malign ? Label::kMalign : Label::kBenign);
  }
  return make_mat(rows, labels);
}

ModelConfig config_for(ModelKind kind) {
  ModelConfig cfg;
  cfg.kind = kind;
  cfg.lof.k = 5;
  cfg.iforest.n_trees = 20;
  cfg.iforest.subsample = 32;
  cfg.iforest.seed = 7;
  cfg.elliptic.seed = 7;
  return cfg;
}

FeatureMatrix train_data_for(ModelKind kind) {
  if (kind == ModelKind::kSvm) return labeled_blobs(40, 1);
  return gaussian_mat(60, 2, 2);
}

}  // namespace

TEST_CASE("model kind names round-trip and classify the one-class family") {
  const ModelKind kinds[] = {ModelKind::kSvm, ModelKind::kOcSvm,
                             ModelKind::kLof, ModelKind::kIsolationForest,
                             ModelKind::kEllipticEnvelope};
  for (const ModelKind kind : kinds) {
    CHECK(model_kind_from_name(model_kind_name(kind)) == kind);
    CHECK(is_one_class(kind) == (kind != ModelKind::kSvm));
  }
  CHECK_FALSE(model_kind_from_name("decision-tree").has_value());
}

TEST_CASE("json serialization round-trips every model kind byte for byte") {
  const ModelKind kinds[] = {ModelKind::kSvm, ModelKind::kOcSvm,
                             ModelKind::kLof, ModelKind::kIsolationForest,
                             ModelKind::kEllipticEnvelope};
  for (const ModelKind kind : kinds) {
    CAPTURE(model_kind_name(kind));
    const TrainedModel model = train_model(train_data_for(kind),
                                           config_for(kind));
    const std::string text = model_to_json(model);
    const TrainedModel back = model_from_json(text);
    CHECK(model_to_json(back) == text);
    CHECK(back.kind == model.kind);
    CHECK(back.feature_names == model.feature_names);
    CHECK(back.decision_threshold == model.decision_threshold);
    CHECK(back.input_dim() == model.input_dim());

    // Scores agree exactly after the round trip.
    const FeatureMatrix probe = gaussian_mat(10, 2, 33);
    CHECK(back.decision_scores(probe) == model.decision_scores(probe));
  }
}

TEST_CASE("non-finite fitted values survive serialization") {
  // A duplicate cluster gives LOF infinite reachability densities.
  const FeatureMatrix x = make_mat({{0.0, 0.0},
                                    {0.0, 0.0},
                                    {0.0, 0.0},
                                    {4.0, 0.0},
                                    {5.0, 0.0},
                                    {4.5, 1.0}});
  ModelConfig cfg;
  cfg.kind = ModelKind::kLof;
  cfg.lof.k = 2;
  const TrainedModel model = train_model(x, cfg);
  const std::string text = model_to_json(model);
  CHECK(text.find("\"inf\"") != std::string::npos);
  const TrainedModel back = model_from_json(text);
  CHECK(model_to_json(back) == text);
}

TEST_CASE("decision scores orient every kind as larger-is-more-anomalous") {
  const ModelKind kinds[] = {ModelKind::kOcSvm, ModelKind::kLof,
                             ModelKind::kIsolationForest,
                             ModelKind::kEllipticEnvelope};
  const FeatureMatrix x = gaussian_mat(120, 2, 3);
  for (const ModelKind kind : kinds) {
    CAPTURE(model_kind_name(kind));
    const TrainedModel model = train_model(x, config_for(kind));
    const std::vector<double> inlier{0.1, -0.2};
    const std::vector<double> outlier{40.0, 40.0};
    CHECK(model.decision_score(outlier) > model.decision_score(inlier));
    // And the threshold rule flags the far point as malign.
    const FeatureMatrix probe =
        make_mat({{0.1, -0.2}, {40.0, 40.0}});
    const std::vector<Label> pred = model.predict(probe);
    CHECK(pred[1] == Label::kMalign);
  }
}

TEST_CASE("svm facade predicts its own separable training data") {
  // A 9-sigma gap keeps every sample on its own side of the midline, so the
  // soft-margin fit classifies the whole training set correctly.
  const FeatureMatrix x = labeled_blobs(60, 4, 9.0);
  const TrainedModel model = train_model(x, config_for(ModelKind::kSvm));
  CHECK(model.kind == ModelKind::kSvm);
  CHECK(model.decision_threshold == 0.0);
  const std::vector<Label> pred = model.predict(x);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    if (pred[i] == x.labels()[i]) ++correct;
  }
  CHECK(correct == x.rows());
  CHECK(model.feature_names == x.feature_names());
}

TEST_CASE("model json rejects schema violations but tolerates extra keys") {
  const TrainedModel model =
      train_model(train_data_for(ModelKind::kOcSvm),
                  config_for(ModelKind::kOcSvm));
  const std::string text = model_to_json(model);

  // Unknown top-level keys (e.g. embedded provenance) are ignored.
  std::string with_extra = text;
  with_extra.insert(1, "\"provenance\":{\"tool\":\"x\"},");
  const TrainedModel back = model_from_json(with_extra);
  CHECK(model_to_json(back) == text);

  CHECK_THROWS_AS(model_from_json("{not json"), SchemaViolation);
  CHECK_THROWS_AS(model_from_json("[]"), SchemaViolation);

  // Version and kind are mandatory and checked.
  std::string wrong_version = text;
  const std::size_t pos = wrong_version.find("\"format_version\":1");
  REQUIRE(pos != std::string::npos);
  wrong_version.replace(pos, 18, "\"format_version\":2");
  CHECK_THROWS_AS(model_from_json(wrong_version), SchemaViolation);

  // The last "kind" key in the (alphabetically ordered) document is the
  // top-level one; renaming it leaves the model without a kind.
  std::string no_kind = text;
  const std::size_t kpos = no_kind.rfind("\"kind\":");
  REQUIRE(kpos != std::string::npos);
  no_kind.replace(kpos, 7, "\"kid\":");
  CHECK_THROWS_AS(model_from_json(no_kind), SchemaViolation);
}

TEST_CASE("model files save and load through the filesystem") {
  const TrainedModel model =
      train_model(train_data_for(ModelKind::kEllipticEnvelope),
                  config_for(ModelKind::kEllipticEnvelope));
  const std::string path =
      (std::filesystem::temp_directory_path() / "hpcguard_model_test.json")
          .string();
  save_model(model, path);
  const TrainedModel back = load_model(path);
  CHECK(model_to_json(back) == model_to_json(model));
  std::remove(path.c_str());

  CHECK_THROWS_AS(load_model("/nonexistent/model.json"), IoError);
}

TEST_CASE("facade rejects queries with the wrong width") {
  const TrainedModel model =
      train_model(train_data_for(ModelKind::kLof), config_for(ModelKind::kLof));
  CHECK_THROWS_AS(model.decision_score(std::vector<double>{1.0, 2.0, 3.0}),
                  DimensionMismatch);
}
