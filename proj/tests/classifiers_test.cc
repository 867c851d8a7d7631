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


#include "rehab/classifiers.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "rehab/error.h"
#include "test_util.h"

namespace rehab {
// Readable parameter values in test names.
void PrintTo(ModelKind kind, std::ostream* os) { *os << ModelKindName(kind); }

namespace {

using testing::DefaultOntology;

FeatureVector Fv(std::vector<FeatureEntry> entries) { return FeatureVector{std::move(entries)}; }

double Accuracy(const ConceptModel& m, std::span<const FeatureVector> x, const std::vector<bool>& y) {
  int right = 0;
  for (std::size_t i = 0; i < x.size(); ++i) right += m.Predict(x[i]) == y[i];
  return static_cast<double>(right) / static_cast<double>(x.size());
}

TEST(FeaturesTest, TokenizerKeepsAlphanumericRuns) {
  EXPECT_EQ(Tokenize("AROM LUE"), (std::vector<std::string>{"arom", "lue"}));
  EXPECT_EQ(Tokenize("arom x10, 2x10!"), (std::vector<std::string>{"arom", "x10", "2x10"}));
  EXPECT_TRUE(Tokenize(" - / ").empty());
}

TEST(FeaturesTest, VocabularyIsSortedAndDeterministic) {
  std::vector<std::string> texts = {"AROM LUE", "arom x10"};
  Vocabulary v = BuildVocabulary(texts);
  EXPECT_EQ(std::vector<std::string>(v.tokens().begin(), v.tokens().end()),
            (std::vector<std::string>{"arom", "lue", "x10"}));
  EXPECT_EQ(v, BuildVocabulary(texts));
  EXPECT_EQ(v.IndexOf("lue"), 1);
  EXPECT_EQ(v.IndexOf("zzz"), -1);
  std::vector<std::string> empty = {""};
  EXPECT_THROW(BuildVocabulary(empty), EmptyCorpus);
}

TEST(FeaturesTest, VectorizeCountsKnownTokens) {
  Vocabulary v({"arom", "lue"});
  EXPECT_EQ(Vectorize(v, "AROM arom zzz"), Fv({{0, 2}}));
  EXPECT_TRUE(Vectorize(v, "").empty());
  EXPECT_TRUE(Vectorize(v, "zzz qqq").empty());
}

TEST(WeightsTest, BalancedFormula) {
  ClassWeights w = BalancedClassWeights({true, true, true, false});
  EXPECT_EQ(w.positive, 4.0 / 6.0);
  EXPECT_EQ(w.negative, 2.0);
  ClassWeights even = BalancedClassWeights({true, false, true, false});
  EXPECT_EQ(even.positive, 1.0);
  EXPECT_EQ(even.negative, 1.0);
  EXPECT_EQ(BalancedSampleWeights({true, false, true, true}),
            (std::vector<double>{4.0 / 6.0, 2.0, 4.0 / 6.0, 4.0 / 6.0}));
  EXPECT_THROW(BalancedClassWeights({true, true}), SingleClass);
  EXPECT_THROW(BalancedClassWeights({false}), SingleClass);
}

TEST(ModelKindTest, NamesRoundTrip) {
  for (ModelKind k : {ModelKind::kLogReg, ModelKind::kSvmPoly2, ModelKind::kAdaBoost,
                      ModelKind::kGradBoost}) {
    EXPECT_EQ(ParseModelKind(ModelKindName(k)), k);
  }
  EXPECT_THROW(ParseModelKind("forest"), ConfigError);
}

// XOR on two features: (0,0) and (1,1) positive, (0,1) and (1,0) negative.
struct Xor {
  std::vector<FeatureVector> x = {Fv({}), Fv({{0, 1}, {1, 1}}), Fv({{1, 1}}), Fv({{0, 1}})};
  std::vector<bool> y = {true, true, false, false};
};

// The hard-margin dual of this fixture, solved by hand from the four active
// constraints, has alphas (10/3, 2, 8/3, 8/3) and bias 1. With C = 1 every
// alpha sits at the bound and the soft-margin optimum misclassifies one
// point; C = 10 leaves the hard-margin solution feasible.
TEST(SvmTest, SeparatesXorWithDegreeTwoKernel) {
  Xor d;
  TrainConfig cfg;
  cfg.svm_c = 10.0;
  TrainTrace trace;
  ConceptModel m = TrainClassifier(ModelKind::kSvmPoly2, "c", d.x, d.y, 2, cfg, &trace);
  EXPECT_EQ(Accuracy(m, d.x, d.y), 1.0);
  const auto& p = std::get<SvmParams>(m.params);
  EXPECT_TRUE(p.converged);
  EXPECT_LT(p.kkt_residual, 1e-3);
  // Every point lies on the margin.
  for (std::size_t i = 0; i < d.x.size(); ++i) {
    EXPECT_NEAR(m.Decision(d.x[i]), d.y[i] ? 1.0 : -1.0, 1e-3);
  }
  EXPECT_NEAR(p.bias, 1.0, 1e-3);

  // Recompute the decision function from the dual solution by hand.
  for (const FeatureVector& u : d.x) {
    double f = p.bias;
    for (std::size_t i = 0; i < p.support.size(); ++i) {
      double dot = p.support[i].Dot(u);
      f += p.coef[i] * (dot + 1.0) * (dot + 1.0);
    }
    EXPECT_NEAR(f, m.Decision(u), 1e-12);
  }
}

TEST(SvmTest, XorAtUnitCostIsBoundConstrained) {
  Xor d;
  TrainTrace trace;
  ConceptModel m = TrainClassifier(ModelKind::kSvmPoly2, "c", d.x, d.y, 2, TrainConfig{}, &trace);
  const auto& p = std::get<SvmParams>(m.params);
  EXPECT_LT(p.kkt_residual, 1e-3);
  ASSERT_EQ(p.coef.size(), 4u);
  for (double c : p.coef) EXPECT_NEAR(std::abs(c), 1.0, 1e-9);
  EXPECT_EQ(Accuracy(m, d.x, d.y), 0.75);
}

TEST(SvmTest, KernelMatrixMatchesPolyKernel) {
  Xor d;
  KernelMatrix k(d.x, TrainConfig{});
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) EXPECT_EQ(k(i, j), PolyKernel(d.x[i], d.x[j], 1.0, 1.0, 2));
  }
  EXPECT_EQ(PolyKernel(d.x[1], d.x[1], 1.0, 1.0, 2), 9.0);
}

// Eight short texts where one token marks the positives.
struct Indicator {
  Vocabulary vocab;
  std::vector<FeatureVector> x;
  std::vector<bool> y;
  Indicator() {
    std::vector<std::string> texts = {"key arm curls", "key leg press", "key bridge", "key walk",
                                      "arm curls",     "leg press",     "bridge hold", "walk fast"};
    vocab = BuildVocabulary(texts);
    for (std::size_t i = 0; i < texts.size(); ++i) {
      x.push_back(Vectorize(vocab, texts[i]));
      y.push_back(i < 4);
    }
  }
};

class AllKindsTest : public ::testing::TestWithParam<ModelKind> {};

TEST_P(AllKindsTest, SeparableFixtureIsLearnedExactly) {
  Indicator d;
  ConceptModel m = TrainClassifier(GetParam(), "c", d.x, d.y, d.vocab.size(), TrainConfig{});
  EXPECT_EQ(Accuracy(m, d.x, d.y), 1.0);
  for (std::size_t i = 0; i < d.x.size(); ++i) EXPECT_EQ(PredictLabel(m, d.x[i]), d.y[i]);
}

TEST_P(AllKindsTest, SingleClassIsRejected) {
  Indicator d;
  std::vector<bool> none(d.x.size(), false);
  EXPECT_THROW(TrainClassifier(GetParam(), "c", d.x, none, d.vocab.size(), TrainConfig{}),
               SingleClass);
  EXPECT_THROW(TrainClassifier(GetParam(), "c", {}, {}, d.vocab.size(), TrainConfig{}),
               EmptyCorpus);
}

TEST_P(AllKindsTest, SerializedModelDecidesIdentically) {
  Indicator d;
  ConceptModel m = TrainClassifier(GetParam(), "c", d.x, d.y, d.vocab.size(), TrainConfig{});
  std::string text = SerializeModel(m);
  ConceptModel back = ParseModel(text);
  EXPECT_EQ(back.kind, m.kind);
  EXPECT_EQ(back.concept_id, "c");
  EXPECT_EQ(back.config, m.config);
  for (const FeatureVector& v : d.x) EXPECT_EQ(back.Decision(v), m.Decision(v));
  EXPECT_EQ(SerializeModel(back), text);
}

TEST_P(AllKindsTest, TrainingIsDeterministic) {
  Indicator d;
  ConceptModel a = TrainClassifier(GetParam(), "c", d.x, d.y, d.vocab.size(), TrainConfig{});
  ConceptModel b = TrainClassifier(GetParam(), "c", d.x, d.y, d.vocab.size(), TrainConfig{});
  EXPECT_EQ(SerializeModel(a), SerializeModel(b));
}

INSTANTIATE_TEST_SUITE_P(Kinds, AllKindsTest,
                         ::testing::Values(ModelKind::kLogReg, ModelKind::kSvmPoly2,
                                           ModelKind::kAdaBoost, ModelKind::kGradBoost),
                         [](const auto& info) { return std::string(ModelKindName(info.param)); });

TEST(LogRegTest, ZeroModelPredictsFalse) {
  ConceptModel m;
  m.kind = ModelKind::kLogReg;
  m.params = LogRegParams{{0.0, 0.0}, 0.0};
  EXPECT_EQ(m.Decision(Fv({{0, 3}})), 0.0);
  EXPECT_FALSE(m.Predict(Fv({{0, 3}})));
}

TEST(LogRegTest, EmptyInputUsesBiasOnly) {
  ConceptModel m;
  m.kind = ModelKind::kLogReg;
  m.params = LogRegParams{{5.0, -5.0}, 0.25};
  EXPECT_EQ(m.Decision(Fv({})), 0.25);
  EXPECT_TRUE(m.Predict(Fv({})));
}

struct RandomProblem {
  std::vector<FeatureVector> x;
  std::vector<bool> y;
  std::vector<double> w;
  int dim = 0;
};

RandomProblem MakeProblem(std::mt19937_64& gen, int max_dim, int max_n) {
  RandomProblem p;
  p.dim = 2 + static_cast<int>(gen() % (max_dim - 1));
  int n = 4 + static_cast<int>(gen() % (max_n - 3));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < n; ++i) {
    FeatureVector v;
    for (int f = 0; f < p.dim; ++f) {
      if (unit(gen) < 0.3) v.entries.push_back({f, 1 + static_cast<int>(gen() % 3)});
    }
    p.x.push_back(v);
    p.y.push_back(i < 2 ? i == 0 : unit(gen) < 0.4);
  }
  p.w = BalancedSampleWeights(p.y);
  return p;
}

TEST(LogRegTest, GradientMatchesFiniteDifferences) {
  std::mt19937_64 gen(3);
  std::normal_distribution<double> normal(0.0, 0.5);
  for (int trial = 0; trial < 20; ++trial) {
    RandomProblem p = MakeProblem(gen, 30, 50);
    std::vector<double> params(p.dim + 1);
    for (double& v : params) v = normal(gen);
    std::vector<double> g = LogisticGradient(p.x, p.y, p.w, params);
    const double h = 1e-6;
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < params.size(); ++k) {
      std::vector<double> up = params, down = params;
      up[k] += h;
      down[k] -= h;
      double fd = (LogisticLoss(p.x, p.y, p.w, up) - LogisticLoss(p.x, p.y, p.w, down)) / (2 * h);
      num += (fd - g[k]) * (fd - g[k]);
      den += g[k] * g[k] + fd * fd;
    }
    EXPECT_LT(std::sqrt(num) / std::max(std::sqrt(den), 1e-300), 1e-5) << "trial " << trial;
  }
}

TEST(LogRegTest, LossNeverIncreases) {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 5; ++trial) {
    RandomProblem p = MakeProblem(gen, 20, 40);
    TrainConfig cfg;
    cfg.max_epochs = 2000;
    TrainTrace trace;
    TrainClassifier(ModelKind::kLogReg, "c", p.x, p.y, p.dim, cfg, &trace);
    ASSERT_GE(trace.loss.size(), 2u);
    for (std::size_t e = 1; e < trace.loss.size(); ++e) {
      EXPECT_LE(trace.loss[e], trace.loss[e - 1] + 1e-12) << "epoch " << e;
    }
  }
}

TEST(BoostingTest, AdaBoostStumpErrorsStayBelowHalf) {
  std::mt19937_64 gen(9);
  for (int trial = 0; trial < 10; ++trial) {
    RandomProblem p = MakeProblem(gen, 15, 40);
    TrainTrace trace;
    TrainClassifier(ModelKind::kAdaBoost, "c", p.x, p.y, p.dim, TrainConfig{}, &trace);
    ASSERT_FALSE(trace.stump_errors.empty());
    for (double e : trace.stump_errors) EXPECT_LT(e, 0.5);
  }
}

TEST(BoostingTest, GradBoostDevianceNeverIncreases) {
  std::mt19937_64 gen(13);
  for (int trial = 0; trial < 10; ++trial) {
    RandomProblem p = MakeProblem(gen, 15, 40);
    TrainTrace trace;
    TrainClassifier(ModelKind::kGradBoost, "c", p.x, p.y, p.dim, TrainConfig{}, &trace);
    ASSERT_EQ(trace.deviance.size(), 51u);
    for (std::size_t s = 1; s < trace.deviance.size(); ++s) {
      EXPECT_LE(trace.deviance[s], trace.deviance[s - 1] + 1e-12) << "stage " << s;
    }
  }
}

TEST(BoostingTest, AdaBoostUsesConfiguredEstimatorCap) {
  std::mt19937_64 gen(17);
  RandomProblem p = MakeProblem(gen, 15, 40);
  TrainConfig cfg;
  cfg.ada_estimators = 7;
  ConceptModel m = TrainClassifier(ModelKind::kAdaBoost, "c", p.x, p.y, p.dim, cfg);
  EXPECT_LE(std::get<AdaBoostParams>(m.params).stumps.size(), 7u);
}

GoldCorpus SmallCorpus() {
  testing::GoldBuilder b;
  for (int s = 0; s < 6; ++s) {
    std::string id = "C" + std::to_string(s);
    b.AddSection(id, s % 2 ? Origin::kRandom : Origin::kEnriched,
                 {"AROM L shoulder flexion", "bridges 2x10", "PROM R knee extension HEP"});
    b.Annotate(id, 0, "AROM", "rom_active").Annotate(id, 0, "shoulder", "loc_shoulder");
    b.Annotate(id, 2, "PROM", "rom_passive").Annotate(id, 2, "knee", "loc_knee");
  }
  return b.Build();
}

TEST(BundleTest, TrainsPresentConceptsAndRoundTrips) {
  GoldCorpus g = SmallCorpus();
  ModelBundle bundle = TrainConceptModels(ModelKind::kAdaBoost, g, DefaultOntology(), TrainConfig{});
  std::vector<std::string> trained;
  for (const ConceptModel& m : bundle.models) trained.push_back(m.concept_id);
  EXPECT_EQ(trained, (std::vector<std::string>{"rom_active", "rom_passive", "loc_knee",
                                               "loc_shoulder"}));
  EXPECT_EQ(bundle.untrainable.size(), DefaultOntology().BinaryConceptIds().size() - 4);

  LabelMap pred = PredictSequences(bundle, g.sequences);
  EXPECT_EQ(pred, SequenceTargets(g, DefaultOntology()));

  testing::TempDir dir;
  SaveModelBundle(bundle, dir.path().string());
  EXPECT_TRUE(std::filesystem::exists(dir.path() / "vocab.json"));
  EXPECT_TRUE(std::filesystem::exists(dir.path() / "model-rom_active-ada.json"));
  ModelBundle back = LoadModelBundle(dir.path().string());
  EXPECT_EQ(back.vocab, bundle.vocab);
  EXPECT_EQ(PredictSequences(back, g.sequences), pred);
}

TEST(BundleTest, MissingDirectoryIsNotFound) {
  EXPECT_THROW(LoadModelBundle("/nonexistent/models"), Error);
}

}  // namespace
}  // namespace rehab
