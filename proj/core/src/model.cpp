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
#include "hpcguard/model.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "hpcguard/error.hpp"

namespace hpcguard {
namespace {

using nlohmann::json;

constexpr int kFormatVersion = 1;

SchemaViolation schema_error(const std::string& detail) {
  return SchemaViolation(0, "model json: " + detail);
}

// Doubles round-trip exactly through the JSON shortest representation;
// non-finite values (legal in LOF densities) are encoded as string tokens
// because JSON numbers cannot express them.
json enc(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

double dec(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw schema_error("expected a number, got " + j.dump());
}

json enc_vec(const std::vector<double>& v) {
  json a = json::array();
  for (const double x : v) a.push_back(enc(x));
  return a;
}

std::vector<double> dec_vec(const json& j) {
  if (!j.is_array()) throw schema_error("expected an array of numbers");
  std::vector<double> v;
  v.reserve(j.size());
  for (const auto& e : j) v.push_back(dec(e));
  return v;
}

json enc_kernel(const KernelSpec& k) {
  return json{{"kind", k.kind == KernelKind::kRbf ? "rbf" : "linear"},
              {"gamma", enc(k.gamma)}};
}

KernelSpec dec_kernel(const json& j) {
  KernelSpec k;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "rbf") {
    k.kind = KernelKind::kRbf;
  } else if (kind == "linear") {
    k.kind = KernelKind::kLinear;
  } else {
    throw schema_error("unknown kernel kind '" + kind + "'");
  }
  k.gamma = dec(j.at("gamma"));
  return k;
}

std::size_t dec_size(const json& j, const char* what) {
  if (!j.is_number_unsigned()) {
    throw schema_error(std::string(what) + " must be a non-negative integer");
  }
  return j.get<std::size_t>();
}

json fitted_to_json(const SvmFit& f) {
  return json{{"support_vectors", enc_vec(f.support_vectors)},
              {"dual_coefs", enc_vec(f.dual_coefs)},
              {"bias", enc(f.bias)},
              {"kernel", enc_kernel(f.kernel)},
              {"c", enc(f.c)},
              {"tol", enc(f.tol)},
              {"dim", f.dim}};
}

json fitted_to_json(const OcSvmFit& f) {
  return json{{"support_vectors", enc_vec(f.support_vectors)},
              {"dual_coefs", enc_vec(f.dual_coefs)},
              {"rho", enc(f.rho)},
              {"nu", enc(f.nu)},
              {"kernel", enc_kernel(f.kernel)},
              {"tol", enc(f.tol)},
              {"dim", f.dim}};
}

json fitted_to_json(const LofFit& f) {
  return json{{"points", enc_vec(f.points)},
              {"k_distances", enc_vec(f.k_distances)},
              {"lrds", enc_vec(f.lrds)},
              {"train_scores", enc_vec(f.train_scores)},
              {"k", f.k},
              {"threshold", enc(f.threshold)},
              {"dim", f.dim}};
}

json fitted_to_json(const IforestFit& f) {
  json trees = json::array();
  for (const auto& tree : f.trees) {
    json nodes = json::array();
    for (const auto& node : tree.nodes) {
      nodes.push_back(json::array({node.feature, enc(node.split), node.left,
                                   node.right, enc(node.leaf_term)}));
    }
    trees.push_back(std::move(nodes));
  }
  return json{{"trees", std::move(trees)},
              {"train_scores", enc_vec(f.train_scores)},
              {"normalizer", enc(f.normalizer)},
              {"threshold", enc(f.threshold)},
              {"subsample", f.subsample},
              {"contamination", enc(f.contamination)},
              {"seed", f.seed},
              {"dim", f.dim}};
}

json fitted_to_json(const EllipticFit& f) {
  json restarts = json::array();
  for (const auto& seq : f.restart_logdets) restarts.push_back(enc_vec(seq));
  return json{{"mean", enc_vec(f.mean)},
              {"covariance", enc_vec(f.covariance)},
              {"chol", enc_vec(f.chol)},
              {"threshold", enc(f.threshold)},
              {"contamination", enc(f.contamination)},
              {"seed", f.seed},
              {"dim", f.dim},
              {"restart_logdets", std::move(restarts)}};
}

SvmFit svm_from_json(const json& j) {
  SvmFit f;
  f.support_vectors = dec_vec(j.at("support_vectors"));
  f.dual_coefs = dec_vec(j.at("dual_coefs"));
  f.bias = dec(j.at("bias"));
  f.kernel = dec_kernel(j.at("kernel"));
  f.c = dec(j.at("c"));
  f.tol = dec(j.at("tol"));
  f.dim = dec_size(j.at("dim"), "dim");
  if (f.dim == 0 || f.support_vectors.size() != f.dual_coefs.size() * f.dim) {
    throw schema_error("svm support vector block has inconsistent shape");
  }
  return f;
}

OcSvmFit ocsvm_from_json(const json& j) {
  OcSvmFit f;
  f.support_vectors = dec_vec(j.at("support_vectors"));
  f.dual_coefs = dec_vec(j.at("dual_coefs"));
  f.rho = dec(j.at("rho"));
  f.nu = dec(j.at("nu"));
  f.kernel = dec_kernel(j.at("kernel"));
  f.tol = dec(j.at("tol"));
  f.dim = dec_size(j.at("dim"), "dim");
  if (f.dim == 0 || f.support_vectors.size() != f.dual_coefs.size() * f.dim) {
    throw schema_error("ocsvm support vector block has inconsistent shape");
  }
  return f;
}

LofFit lof_from_json(const json& j) {
  LofFit f;
  f.points = dec_vec(j.at("points"));
  f.k_distances = dec_vec(j.at("k_distances"));
  f.lrds = dec_vec(j.at("lrds"));
  f.train_scores = dec_vec(j.at("train_scores"));
  f.k = dec_size(j.at("k"), "k");
  f.threshold = dec(j.at("threshold"));
  f.dim = dec_size(j.at("dim"), "dim");
  const std::size_t n = f.k_distances.size();
  if (f.dim == 0 || f.points.size() != n * f.dim || f.lrds.size() != n ||
      f.train_scores.size() != n || f.k == 0 || n <= f.k) {
    throw schema_error("lof block has inconsistent shape");
  }
  return f;
}

IforestFit iforest_from_json(const json& j) {
  IforestFit f;
  const json& trees = j.at("trees");
  if (!trees.is_array() || trees.empty()) {
    throw schema_error("iforest needs a non-empty tree array");
  }
  for (const auto& jt : trees) {
    IforestTree tree;
    if (!jt.is_array() || jt.empty()) {
      throw schema_error("iforest tree must be a non-empty node array");
    }
    const std::int64_t n_nodes = static_cast<std::int64_t>(jt.size());
    for (const auto& jn : jt) {
      if (!jn.is_array() || jn.size() != 5) {
        throw schema_error("iforest node must be [feature,split,left,right,c]");
      }
      IforestNode node;
      node.feature = jn[0].get<std::int32_t>();
      node.split = dec(jn[1]);
      node.left = jn[2].get<std::int32_t>();
      node.right = jn[3].get<std::int32_t>();
      node.leaf_term = dec(jn[4]);
      const bool external = node.feature < 0;
      if (!external &&
          (node.left < 0 || node.left >= n_nodes || node.right < 0 ||
           node.right >= n_nodes)) {
        throw schema_error("iforest node child index out of range");
      }
      tree.nodes.push_back(node);
    }
    f.trees.push_back(std::move(tree));
  }
  f.train_scores = dec_vec(j.at("train_scores"));
  f.normalizer = dec(j.at("normalizer"));
  f.threshold = dec(j.at("threshold"));
  f.subsample = dec_size(j.at("subsample"), "subsample");
  f.contamination = dec(j.at("contamination"));
  f.seed = j.at("seed").get<std::uint64_t>();
  f.dim = dec_size(j.at("dim"), "dim");
  if (f.dim == 0 || !(f.normalizer > 0.0)) {
    throw schema_error("iforest block has inconsistent shape");
  }
  return f;
}

EllipticFit elliptic_from_json(const json& j) {
  EllipticFit f;
  f.mean = dec_vec(j.at("mean"));
  f.covariance = dec_vec(j.at("covariance"));
  f.chol = dec_vec(j.at("chol"));
  f.threshold = dec(j.at("threshold"));
  f.contamination = dec(j.at("contamination"));
  f.seed = j.at("seed").get<std::uint64_t>();
  f.dim = dec_size(j.at("dim"), "dim");
  for (const auto& seq : j.at("restart_logdets")) {
    f.restart_logdets.push_back(dec_vec(seq));
  }
  const std::size_t d = f.dim;
  if (d == 0 || f.mean.size() != d || f.covariance.size() != d * d ||
      f.chol.size() != d * d) {
    throw schema_error("elliptic block has inconsistent shape");
  }
  return f;
}

}  // namespace

std::string_view model_kind_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::kSvm:
      return "svm";
    case ModelKind::kOcSvm:
      return "ocsvm";
    case ModelKind::kLof:
      return "lof";
    case ModelKind::kIsolationForest:
      return "iforest";
    case ModelKind::kEllipticEnvelope:
      return "elliptic";
  }
  return "svm";
}

std::optional<ModelKind> model_kind_from_name(std::string_view name) {
  if (name == "svm") return ModelKind::kSvm;
  if (name == "ocsvm") return ModelKind::kOcSvm;
  if (name == "lof") return ModelKind::kLof;
  if (name == "iforest") return ModelKind::kIsolationForest;
  if (name == "elliptic") return ModelKind::kEllipticEnvelope;
  return std::nullopt;
}

bool is_one_class(ModelKind kind) { return kind != ModelKind::kSvm; }

std::size_t TrainedModel::input_dim() const {
  return std::visit([](const auto& f) { return f.dim; }, fit);
}

double TrainedModel::decision_score(std::span<const double> q) const {
  switch (kind) {
    case ModelKind::kSvm:
      return std::get<SvmFit>(fit).decision_value(q);
    case ModelKind::kOcSvm:
      return -std::get<OcSvmFit>(fit).decision_value(q);
    case ModelKind::kLof:
      return std::get<LofFit>(fit).score(q);
    case ModelKind::kIsolationForest:
      return std::get<IforestFit>(fit).score(q);
    case ModelKind::kEllipticEnvelope:
      return std::get<EllipticFit>(fit).score(q);
  }
  throw InvalidHyperparam("unknown model kind");
}

std::vector<double> TrainedModel::decision_scores(
    const FeatureMatrix& q) const {
  if (q.cols() != input_dim()) throw DimensionMismatch(input_dim(), q.cols());
  std::vector<double> scores;
  scores.reserve(q.rows());
  for (std::size_t i = 0; i < q.rows(); ++i) {
    scores.push_back(decision_score(q.row(i)));
  }
  return scores;
}

std::vector<Label> TrainedModel::predict(const FeatureMatrix& q) const {
  const std::vector<double> scores = decision_scores(q);
  std::vector<Label> labels;
  labels.reserve(scores.size());
  for (const double s : scores) {
    labels.push_back(s > decision_threshold ? Label::kMalign : Label::kBenign);
  }
  return labels;
}

TrainedModel train_model(const FeatureMatrix& x, const ModelConfig& config) {
  TrainedModel m;
  m.kind = config.kind;
  m.feature_names = x.feature_names();
  switch (config.kind) {
    case ModelKind::kSvm: {
      SvmFit f = svm_train(x, config.svm);
      m.hyperparams = {{"c", f.c}, {"tol", f.tol}};
      if (f.kernel.kind == KernelKind::kRbf) {
        m.hyperparams["gamma"] = f.kernel.gamma;
      }
      m.decision_threshold = 0.0;
      m.fit = std::move(f);
      break;
    }
    case ModelKind::kOcSvm: {
      OcSvmFit f = ocsvm_train(x, config.ocsvm);
      m.hyperparams = {{"nu", f.nu}, {"tol", f.tol}};
      if (f.kernel.kind == KernelKind::kRbf) {
        m.hyperparams["gamma"] = f.kernel.gamma;
      }
      m.decision_threshold = 0.0;
      m.fit = std::move(f);
      break;
    }
    case ModelKind::kLof: {
      LofFit f = lof_fit(x, config.lof);
      m.hyperparams = {{"k", static_cast<double>(f.k)},
                       {"threshold", f.threshold}};
      m.decision_threshold = f.threshold;
      m.fit = std::move(f);
      break;
    }
    case ModelKind::kIsolationForest: {
      IforestFit f = iforest_fit(x, config.iforest);
      m.hyperparams = {{"n_trees", static_cast<double>(f.trees.size())},
                       {"subsample", static_cast<double>(f.subsample)},
                       {"contamination", f.contamination},
                       {"seed", static_cast<double>(f.seed)}};
      m.decision_threshold = f.threshold;
      m.fit = std::move(f);
      break;
    }
    case ModelKind::kEllipticEnvelope: {
      EllipticFit f = elliptic_fit(x, config.elliptic);
      m.hyperparams = {
          {"contamination", f.contamination},
          {"n_restarts", static_cast<double>(config.elliptic.n_restarts)},
          {"seed", static_cast<double>(f.seed)}};
      m.decision_threshold = f.threshold;
      m.fit = std::move(f);
      break;
    }
  }
  return m;
}

std::string model_to_json(const TrainedModel& model) {
  json hyper = json::object();
  for (const auto& [k, v] : model.hyperparams) hyper[k] = enc(v);
  json j{{"format_version", kFormatVersion},
         {"kind", std::string(model_kind_name(model.kind))},
         {"hyperparams", std::move(hyper)},
         {"threshold", enc(model.decision_threshold)},
         {"feature_names", model.feature_names}};
  j["fitted"] =
      std::visit([](const auto& f) { return fitted_to_json(f); }, model.fit);
  return j.dump();
}

TrainedModel model_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw schema_error(e.what());
  }
  try {
    if (!j.is_object()) throw schema_error("document must be an object");
    if (!j.contains("format_version") ||
        j.at("format_version").get<int>() != kFormatVersion) {
      throw schema_error("unsupported format_version");
    }
    const std::string kind_name = j.at("kind").get<std::string>();
    const auto kind = model_kind_from_name(kind_name);
    if (!kind) throw schema_error("unknown model kind '" + kind_name + "'");

    TrainedModel m;
    m.kind = *kind;
    for (const auto& [k, v] : j.at("hyperparams").items()) {
      m.hyperparams[k] = dec(v);
    }
    m.decision_threshold = dec(j.at("threshold"));
    m.feature_names = j.at("feature_names").get<std::vector<std::string>>();

    const json& fitted = j.at("fitted");
    switch (*kind) {
      case ModelKind::kSvm:
        m.fit = svm_from_json(fitted);
        break;
      case ModelKind::kOcSvm:
        m.fit = ocsvm_from_json(fitted);
        break;
      case ModelKind::kLof:
        m.fit = lof_from_json(fitted);
        break;
      case ModelKind::kIsolationForest:
        m.fit = iforest_from_json(fitted);
        break;
      case ModelKind::kEllipticEnvelope:
        m.fit = elliptic_from_json(fitted);
        break;
    }
    if (m.input_dim() != m.feature_names.size()) {
      throw schema_error("feature_names length does not match model dim");
    }
    return m;
  } catch (const json::exception& e) {
    throw schema_error(e.what());
  }
}

void save_model(const TrainedModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << model_to_json(model) << '\n';
  if (!out.flush()) throw IoError("failed writing '" + path + "'");
}

TrainedModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return model_from_json(buf.str());
}

}  // namespace hpcguard
