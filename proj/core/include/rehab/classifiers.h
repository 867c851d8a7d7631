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


// Bag-of-words features and the four per-concept binary classifiers:
// logistic regression, a degree-2 polynomial-kernel SVM, AdaBoost over
// decision stumps and gradient boosting over shallow regression trees.
// Every trainer is deterministic for fixed inputs and config. All four
// weight samples with balanced class weights.

#ifndef REHAB_CLASSIFIERS_H_
#define REHAB_CLASSIFIERS_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rehab/goldstore.h"
#include "rehab/ingest.h"
#include "rehab/ontology.h"

namespace rehab {

// Maximal ASCII alphanumeric runs, lowercased. "2x10" stays one token.
std::vector<std::string> Tokenize(std::string_view text);

struct FeatureEntry {
  int index = 0;
  int count = 0;

  bool operator==(const FeatureEntry&) const = default;
};

// Sparse token counts sorted by index.
struct FeatureVector {
  std::vector<FeatureEntry> entries;

  bool empty() const { return entries.empty(); }
  double Dot(const FeatureVector& other) const;
  double Dot(std::span<const double> dense) const;
  bool operator==(const FeatureVector&) const = default;
};

class Vocabulary {
 public:
  Vocabulary() = default;
  // Tokens sorted lexicographically and numbered densely from 0.
  explicit Vocabulary(std::vector<std::string> tokens);

  int size() const { return static_cast<int>(tokens_.size()); }
  std::span<const std::string> tokens() const { return tokens_; }
  // -1 for out-of-vocabulary tokens.
  int IndexOf(std::string_view token) const;

  bool operator==(const Vocabulary& other) const { return tokens_ == other.tokens_; }

 private:
  std::vector<std::string> tokens_;
  std::map<std::string, int, std::less<>> index_;
};

// Throws EmptyCorpus when the texts hold no tokens at all.
Vocabulary BuildVocabulary(std::span<const std::string> texts);
Vocabulary BuildVocabulary(std::span<const Sequence> sequences);

// Counts of in-vocabulary tokens; unknown tokens are dropped.
FeatureVector Vectorize(const Vocabulary& vocab, std::string_view text);

struct ClassWeights {
  double positive = 1.0;
  double negative = 1.0;
};

// w_c = N / (2 N_c). Throws SingleClass when either class is absent.
ClassWeights BalancedClassWeights(const std::vector<bool>& y);
std::vector<double> BalancedSampleWeights(const std::vector<bool>& y);

enum class ModelKind { kLogReg, kSvmPoly2, kAdaBoost, kGradBoost };

// "logreg", "svm", "ada", "gb".
std::string_view ModelKindName(ModelKind kind);
// Throws ConfigError for unknown names.
ModelKind ParseModelKind(std::string_view name);

struct TrainConfig {
  // Logistic regression: full-batch gradient descent.
  double learning_rate = 1e-4;
  int max_epochs = 10000;
  double tolerance = 1e-8;

  // SVM: K(u, v) = (gamma u.v + coef0)^degree, per-class cost C w_c.
  double svm_c = 1.0;
  double svm_gamma = 1.0;
  double svm_coef0 = 1.0;
  int svm_degree = 2;
  // Working-set stopping threshold and the tolerance the result must meet.
  double svm_eps = 1e-4;
  double kkt_tol = 1e-3;
  int svm_max_iter = 10'000'000;

  int ada_estimators = 100;

  int gb_estimators = 50;
  int gb_max_depth = 3;
  double gb_learning_rate = 0.1;

  bool operator==(const TrainConfig&) const = default;
};

struct LogRegParams {
  std::vector<double> weights;
  double bias = 0.0;
};

struct SvmParams {
  std::vector<FeatureVector> support;
  // alpha_i y_i for each support vector.
  std::vector<double> coef;
  double bias = 0.0;
  double gamma = 1.0;
  double coef0 = 1.0;
  int degree = 2;
  // Largest KKT violation at the returned solution.
  double kkt_residual = 0.0;
  bool converged = true;
};

// Predicts `left` when x[feature] <= threshold and -left otherwise.
struct Stump {
  int feature = 0;
  double threshold = 0.0;
  double left = 1.0;
  double alpha = 0.0;

  double Predict(const FeatureVector& x) const;
};

struct AdaBoostParams {
  std::vector<Stump> stumps;
};

struct TreeNode {
  // -1 marks a leaf.
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double value = 0.0;
};

struct RegressionTree {
  std::vector<TreeNode> nodes;

  double Predict(const FeatureVector& x) const;
};

struct GradBoostParams {
  double init = 0.0;
  double learning_rate = 0.1;
  std::vector<RegressionTree> trees;
};

struct ConceptModel {
  std::string concept_id;
  ModelKind kind = ModelKind::kLogReg;
  std::variant<LogRegParams, SvmParams, AdaBoostParams, GradBoostParams> params;
  TrainConfig config;

  // Raw score; positive means the concept is predicted present. For
  // logistic regression this is the logit, so a probability of exactly 0.5
  // predicts false.
  double Decision(const FeatureVector& x) const;
  bool Predict(const FeatureVector& x) const { return Decision(x) > 0.0; }
};

// Per-run diagnostics, kept in memory only.
struct TrainTrace {
  // Logistic regression loss per epoch, starting with the initial loss.
  std::vector<double> loss;
  int epochs = 0;
  // AdaBoost weighted error of each accepted stump.
  std::vector<double> stump_errors;
  // Gradient boosting training deviance, index 0 is the initial model.
  std::vector<double> deviance;
  int svm_iterations = 0;
  double kkt_residual = 0.0;
  bool converged = true;
};

// Gram matrix of the SVM kernel over one training set, shared by the
// per-concept SVMs trained on it.
class KernelMatrix {
 public:
  KernelMatrix(std::span<const FeatureVector> x, const TrainConfig& config);

  int size() const { return n_; }
  double operator()(int i, int j) const { return k_[static_cast<std::size_t>(i) * n_ + j]; }

 private:
  int n_ = 0;
  std::vector<double> k_;
};

double PolyKernel(const FeatureVector& u, const FeatureVector& v, double gamma,
                  double coef0, int degree);

// Weighted logistic loss, summed over samples, and its gradient. `params`
// holds the weights followed by the bias.
double LogisticLoss(std::span<const FeatureVector> x, const std::vector<bool>& y,
                    std::span<const double> sample_weight,
                    std::span<const double> params);
std::vector<double> LogisticGradient(std::span<const FeatureVector> x,
                                     const std::vector<bool>& y,
                                     std::span<const double> sample_weight,
                                     std::span<const double> params);

// Throws SingleClass if y lacks a class and EmptyCorpus if x is empty.
// `dim` is the feature space size. For SvmPoly2 a kernel matrix over the
// same x may be passed to avoid recomputing it; a run that hits the
// iteration cap returns a model flagged converged=false.
ConceptModel TrainClassifier(ModelKind kind, const std::string& concept_id,
                             std::span<const FeatureVector> x,
                             const std::vector<bool>& y, int dim,
                             const TrainConfig& config,
                             TrainTrace* trace = nullptr,
                             const KernelMatrix* kernel = nullptr);

bool PredictLabel(const ConceptModel& model, const FeatureVector& x);

// A trained model per concept over one vocabulary.
struct ModelBundle {
  Vocabulary vocab;
  std::vector<ConceptModel> models;
  // Concepts skipped because the training split lacks a class.
  std::vector<std::string> untrainable;
};

// One-vs-rest training over every binary ontology concept present in the
// training split.
ModelBundle TrainConceptModels(ModelKind kind, const GoldCorpus& train,
                               const Ontology& ontology,
                               const TrainConfig& config);

// Positive concept ids for each sequence.
LabelMap PredictSequences(const ModelBundle& bundle,
                          std::span<const Sequence> sequences);

// vocab.json plus model-<concept>-<kind>.json per model.
void SaveModelBundle(const ModelBundle& bundle, const std::string& dir);
ModelBundle LoadModelBundle(const std::string& dir);

std::string SerializeModel(const ConceptModel& model);
ConceptModel ParseModel(std::string_view json_text);

}  // namespace rehab

#endif  // REHAB_CLASSIFIERS_H_
