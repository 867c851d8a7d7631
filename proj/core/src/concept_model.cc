// Copyright 2026 The rehab-extract Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>

#include "json.hpp"
#include "rehab/classifiers.h"
#include "rehab/error.h"
#include "rehab/serialization.h"
#include "rehab/text.h"
#include "trainers.h"

namespace rehab {

using nlohmann::json;
using nlohmann::ordered_json;
namespace fs = std::filesystem;

std::string_view ModelKindName(ModelKind kind) {
  switch (kind) {
    case ModelKind::kLogReg: return "logreg";
    case ModelKind::kSvmPoly2: return "svm";
    case ModelKind::kAdaBoost: return "ada";
    case ModelKind::kGradBoost: return "gb";
  }
  return "?";
}

ModelKind ParseModelKind(std::string_view name) {
  for (ModelKind k : {ModelKind::kLogReg, ModelKind::kSvmPoly2, ModelKind::kAdaBoost,
                      ModelKind::kGradBoost}) {
    if (ModelKindName(k) == name) return k;
  }
  throw ConfigError("unknown model kind '" + std::string(name) +
                    "' (expected logreg, svm, ada or gb)");
}

double ConceptModel::Decision(const FeatureVector& x) const {
  switch (kind) {
    case ModelKind::kLogReg: {
      const auto& p = std::get<LogRegParams>(params);
      return x.Dot(p.weights) + p.bias;
    }
    case ModelKind::kSvmPoly2: {
      const auto& p = std::get<SvmParams>(params);
      double f = p.bias;
      for (std::size_t i = 0; i < p.support.size(); ++i) {
        f += p.coef[i] * PolyKernel(p.support[i], x, p.gamma, p.coef0, p.degree);
      }
      return f;
    }
    case ModelKind::kAdaBoost: {
      const auto& p = std::get<AdaBoostParams>(params);
      double f = 0.0;
      for (const Stump& s : p.stumps) f += s.alpha * s.Predict(x);
      return f;
    }
    case ModelKind::kGradBoost: {
      const auto& p = std::get<GradBoostParams>(params);
      double f = 0.0;
      for (const RegressionTree& t : p.trees) f += t.Predict(x);
      return p.init + p.learning_rate * f;
    }
  }
  return 0.0;
}

bool PredictLabel(const ConceptModel& model, const FeatureVector& x) {
  return model.Predict(x);
}

ConceptModel TrainClassifier(ModelKind kind, const std::string& concept_id,
                             std::span<const FeatureVector> x,
                             const std::vector<bool>& y, int dim,
                             const TrainConfig& config, TrainTrace* trace,
                             const KernelMatrix* kernel) {
  if (x.empty()) throw EmptyCorpus("no training examples for " + concept_id);
  if (x.size() != y.size()) throw ShapeError("features and labels differ in length");
  ClassWeights cw = BalancedClassWeights(y);
  std::vector<double> sw = BalancedSampleWeights(y);

  ConceptModel model;
  model.concept_id = concept_id;
  model.kind = kind;
  model.config = config;
  switch (kind) {
    case ModelKind::kLogReg:
      model.params = internal::TrainLogReg(x, y, sw, dim, config, trace);
      break;
    case ModelKind::kSvmPoly2: {
      std::optional<KernelMatrix> own;
      if (kernel == nullptr || kernel->size() != static_cast<int>(x.size())) {
        own.emplace(x, config);
        kernel = &*own;
      }
      model.params = internal::TrainSvm(x, y, cw, config, *kernel, trace);
      break;
    }
    case ModelKind::kAdaBoost:
      model.params = internal::TrainAdaBoost(x, y, sw, dim, config, trace);
      break;
    case ModelKind::kGradBoost:
      model.params = internal::TrainGradBoost(x, y, sw, dim, config, trace);
      break;
  }
  return model;
}

ModelBundle TrainConceptModels(ModelKind kind, const GoldCorpus& train,
                               const Ontology& ontology, const TrainConfig& config) {
  const GoldCorpus corpus = train.HasSplit() ? train.Subset(Split::kTrain) : train;
  if (corpus.sequences.empty()) throw EmptyCorpus("training split has no sequences");
  ModelBundle bundle;
  bundle.vocab = BuildVocabulary(std::span<const Sequence>(corpus.sequences));
  std::vector<FeatureVector> x;
  x.reserve(corpus.sequences.size());
  for (const Sequence& s : corpus.sequences) x.push_back(Vectorize(bundle.vocab, s.text));
  LabelMap targets = SequenceTargets(corpus, ontology);

  std::optional<KernelMatrix> kernel;
  for (const std::string& concept_id : ontology.BinaryConceptIds()) {
    std::vector<bool> y;
    y.reserve(x.size());
    for (const Sequence& s : corpus.sequences) y.push_back(targets.at(RefOf(s)).count(concept_id) > 0);
    std::size_t pos = static_cast<std::size_t>(std::count(y.begin(), y.end(), true));
    if (pos == 0 || pos == y.size()) {
      bundle.untrainable.push_back(concept_id);
      continue;
    }
    if (kind == ModelKind::kSvmPoly2 && !kernel) kernel.emplace(x, config);
    bundle.models.push_back(TrainClassifier(kind, concept_id, x, y, bundle.vocab.size(),
                                            config, nullptr, kernel ? &*kernel : nullptr));
  }
  return bundle;
}

LabelMap PredictSequences(const ModelBundle& bundle, std::span<const Sequence> sequences) {
  LabelMap out;
  for (const Sequence& s : sequences) {
    FeatureVector x = Vectorize(bundle.vocab, s.text);
    auto& labels = out[RefOf(s)];
    for (const ConceptModel& m : bundle.models) {
      if (m.Predict(x)) labels.insert(m.concept_id);
    }
  }
  return out;
}

namespace {

ordered_json VectorToJson(const FeatureVector& v) {
  ordered_json a = ordered_json::array();
  for (const FeatureEntry& e : v.entries) a.push_back({e.index, e.count});
  return a;
}

FeatureVector VectorFromJson(const json& a) {
  FeatureVector v;
  for (const json& e : a) v.entries.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
  return v;
}

ordered_json ConfigToJson(const TrainConfig& c) {
  ordered_json j;
  j["learning_rate"] = c.learning_rate;
  j["max_epochs"] = c.max_epochs;
  j["tolerance"] = c.tolerance;
  j["svm_c"] = c.svm_c;
  j["svm_gamma"] = c.svm_gamma;
  j["svm_coef0"] = c.svm_coef0;
  j["svm_degree"] = c.svm_degree;
  j["svm_eps"] = c.svm_eps;
  j["kkt_tol"] = c.kkt_tol;
  j["svm_max_iter"] = c.svm_max_iter;
  j["ada_estimators"] = c.ada_estimators;
  j["gb_estimators"] = c.gb_estimators;
  j["gb_max_depth"] = c.gb_max_depth;
  j["gb_learning_rate"] = c.gb_learning_rate;
  return j;
}

TrainConfig ConfigFromJson(const json& j) {
  TrainConfig c;
  c.learning_rate = j.value("learning_rate", c.learning_rate);
  c.max_epochs = j.value("max_epochs", c.max_epochs);
  c.tolerance = j.value("tolerance", c.tolerance);
  c.svm_c = j.value("svm_c", c.svm_c);
  c.svm_gamma = j.value("svm_gamma", c.svm_gamma);
  c.svm_coef0 = j.value("svm_coef0", c.svm_coef0);
  c.svm_degree = j.value("svm_degree", c.svm_degree);
  c.svm_eps = j.value("svm_eps", c.svm_eps);
  c.kkt_tol = j.value("kkt_tol", c.kkt_tol);
  c.svm_max_iter = j.value("svm_max_iter", c.svm_max_iter);
  c.ada_estimators = j.value("ada_estimators", c.ada_estimators);
  c.gb_estimators = j.value("gb_estimators", c.gb_estimators);
  c.gb_max_depth = j.value("gb_max_depth", c.gb_max_depth);
  c.gb_learning_rate = j.value("gb_learning_rate", c.gb_learning_rate);
  return c;
}

ordered_json TreeToJson(const RegressionTree& t) {
  ordered_json a = ordered_json::array();
  for (const TreeNode& n : t.nodes) {
    if (n.feature < 0) {
      a.push_back({{"value", n.value}});
    } else {
      a.push_back({{"feature", n.feature}, {"threshold", n.threshold},
                   {"left", n.left}, {"right", n.right}, {"value", n.value}});
    }
  }
  return a;
}

RegressionTree TreeFromJson(const json& a) {
  RegressionTree t;
  for (const json& j : a) {
    TreeNode n;
    n.value = j.at("value").get<double>();
    if (j.contains("feature")) {
      n.feature = j["feature"].get<int>();
      n.threshold = j.at("threshold").get<double>();
      n.left = j.at("left").get<int>();
      n.right = j.at("right").get<int>();
    }
    t.nodes.push_back(n);
  }
  const int size = static_cast<int>(t.nodes.size());
  if (size == 0) throw ValidationError("empty regression tree");
  for (const TreeNode& n : t.nodes) {
    if (n.feature >= 0 && (n.left <= 0 || n.left >= size || n.right <= 0 || n.right >= size)) {
      throw ValidationError("regression tree child index out of range");
    }
  }
  return t;
}

}  // namespace

std::string SerializeModel(const ConceptModel& model) {
  ordered_json j;
  j["schema"] = kModelSchema;
  j["concept_id"] = model.concept_id;
  j["kind"] = std::string(ModelKindName(model.kind));
  j["config"] = ConfigToJson(model.config);
  ordered_json p;
  switch (model.kind) {
    case ModelKind::kLogReg: {
      const auto& lr = std::get<LogRegParams>(model.params);
      p["bias"] = lr.bias;
      p["weights"] = lr.weights;
      break;
    }
    case ModelKind::kSvmPoly2: {
      const auto& s = std::get<SvmParams>(model.params);
      p["bias"] = s.bias;
      p["gamma"] = s.gamma;
      p["coef0"] = s.coef0;
      p["degree"] = s.degree;
      p["kkt_residual"] = s.kkt_residual;
      p["converged"] = s.converged;
      p["coef"] = s.coef;
      ordered_json sv = ordered_json::array();
      for (const FeatureVector& v : s.support) sv.push_back(VectorToJson(v));
      p["support"] = sv;
      break;
    }
    case ModelKind::kAdaBoost: {
      const auto& a = std::get<AdaBoostParams>(model.params);
      ordered_json st = ordered_json::array();
      for (const Stump& s : a.stumps) {
        st.push_back({{"feature", s.feature}, {"threshold", s.threshold},
                      {"left", s.left}, {"alpha", s.alpha}});
      }
      p["stumps"] = st;
      break;
    }
    case ModelKind::kGradBoost: {
      const auto& g = std::get<GradBoostParams>(model.params);
      p["init"] = g.init;
      p["learning_rate"] = g.learning_rate;
      ordered_json trees = ordered_json::array();
      for (const RegressionTree& t : g.trees) trees.push_back(TreeToJson(t));
      p["trees"] = trees;
      break;
    }
  }
  j["params"] = p;
  return j.dump() + "\n";
}

ConceptModel ParseModel(std::string_view json_text) {
  try {
    json j = json::parse(json_text);
    if (j.value("schema", std::string()) != kModelSchema) {
      throw ValidationError("model file has schema '" + j.value("schema", std::string()) +
                            "', expected " + kModelSchema);
    }
    ConceptModel m;
    m.concept_id = j.at("concept_id").get<std::string>();
    m.kind = ParseModelKind(j.at("kind").get<std::string>());
    m.config = ConfigFromJson(j.value("config", json::object()));
    const json& p = j.at("params");
    switch (m.kind) {
      case ModelKind::kLogReg: {
        LogRegParams lr;
        lr.bias = p.at("bias").get<double>();
        lr.weights = p.at("weights").get<std::vector<double>>();
        m.params = std::move(lr);
        break;
      }
      case ModelKind::kSvmPoly2: {
        SvmParams s;
        s.bias = p.at("bias").get<double>();
        s.gamma = p.at("gamma").get<double>();
        s.coef0 = p.at("coef0").get<double>();
        s.degree = p.at("degree").get<int>();
        s.kkt_residual = p.value("kkt_residual", 0.0);
        s.converged = p.value("converged", true);
        s.coef = p.at("coef").get<std::vector<double>>();
        for (const json& v : p.at("support")) s.support.push_back(VectorFromJson(v));
        if (s.coef.size() != s.support.size()) {
          throw ValidationError("svm coefficient count does not match support vectors");
        }
        m.params = std::move(s);
        break;
      }
      case ModelKind::kAdaBoost: {
        AdaBoostParams a;
        for (const json& s : p.at("stumps")) {
          a.stumps.push_back({s.at("feature").get<int>(), s.at("threshold").get<double>(),
                              s.at("left").get<double>(), s.at("alpha").get<double>()});
        }
        m.params = std::move(a);
        break;
      }
      case ModelKind::kGradBoost: {
        GradBoostParams g;
        g.init = p.at("init").get<double>();
        g.learning_rate = p.at("learning_rate").get<double>();
        for (const json& t : p.at("trees")) g.trees.push_back(TreeFromJson(t));
        m.params = std::move(g);
        break;
      }
    }
    return m;
  } catch (const json::exception& e) {
    throw ParseError(std::string("model: ") + e.what());
  }
}

void SaveModelBundle(const ModelBundle& bundle, const std::string& dir) {
  fs::create_directories(dir);
  {
    ordered_json v;
    v["schema"] = kVocabSchema;
    v["tokens"] = std::vector<std::string>(bundle.vocab.tokens().begin(),
                                           bundle.vocab.tokens().end());
    std::ofstream out(fs::path(dir) / "vocab.json");
    if (!out) throw NotFound("cannot write to model directory " + dir);
    out << v.dump() << '\n';
  }
  for (const ConceptModel& m : bundle.models) {
    std::string name = "model-" + m.concept_id + "-" + std::string(ModelKindName(m.kind)) + ".json";
    std::ofstream out(fs::path(dir) / name);
    if (!out) throw NotFound("cannot write " + name);
    out << SerializeModel(m);
  }
}

ModelBundle LoadModelBundle(const std::string& dir) {
  ModelBundle bundle;
  fs::path vocab_path = fs::path(dir) / "vocab.json";
  try {
    json v = json::parse(ReadFile(vocab_path.string()));
    if (v.value("schema", std::string()) != kVocabSchema) {
      throw ValidationError("vocab.json has unexpected schema");
    }
    bundle.vocab = Vocabulary(v.at("tokens").get<std::vector<std::string>>());
  } catch (const json::exception& e) {
    throw ParseError("vocab.json: " + std::string(e.what()));
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    std::string name = entry.path().filename().string();
    if (entry.is_regular_file() && name.starts_with("model-") && name.ends_with(".json")) {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  for (const fs::path& f : files) {
    ConceptModel m = ParseModel(ReadFile(f.string()));
    if (!bundle.models.empty() && bundle.models.front().kind != m.kind) {
      throw ValidationError("model directory " + dir + " mixes model kinds");
    }
    if (m.kind == ModelKind::kLogReg &&
        std::get<LogRegParams>(m.params).weights.size() !=
            static_cast<std::size_t>(bundle.vocab.size())) {
      throw ValidationError(f.filename().string() + " does not match the vocabulary size");
    }
    bundle.models.push_back(std::move(m));
  }
  if (bundle.models.empty()) throw NotFound("no models in " + dir);
  return bundle;
}

}  // namespace rehab
