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


#include "rehab/goldstore.h"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "rehab/error.h"
#include "test_util.h"

namespace rehab {
namespace {

using testing::DefaultOntology;
using testing::GoldBuilder;

GoldCorpus SixSections() {
  GoldBuilder b;
  for (int i = 0; i < 6; ++i) {
    std::string id = "S" + std::to_string(i);
    b.AddSection(id, i < 3 ? Origin::kEnriched : Origin::kRandom,
                 {"AROM LUE flexion - 2x10", "bridges 30 sec HEP"});
    b.Annotate(id, 0, "AROM", "rom_active")
        .Annotate(id, 0, "LUE", "side_left")
        .Annotate(id, 0, "LUE", "loc_upper_extremity")
        .Annotate(id, 0, "flexion", "plane_flexion")
        .Annotate(id, 0, "2x10", "sets", 2)
        .Annotate(id, 0, "2x10", "reps", 10)
        .Annotate(id, 1, "30 sec", "duration", 30)
        .Annotate(id, 1, "HEP", "desc_home_exercise_program");
  }
  return b.Build();
}

TEST(GoldStoreTest, WellFormedFixtureValidates) {
  EXPECT_NO_THROW(ValidateCorpus(SixSections(), DefaultOntology()));
}

TEST(GoldStoreTest, AnnotationPastSequenceEndIsRejected) {
  GoldCorpus g = SixSections();
  g.annotations[0].end = g.sequences[0].text.size() + 1;
  EXPECT_THROW(ValidateCorpus(g, DefaultOntology()), ValidationError);
}

TEST(GoldStoreTest, NumericValueOnBinaryConceptIsRejected) {
  GoldCorpus g = SixSections();
  g.annotations[3].numeric_value = 3;  // plane_flexion
  EXPECT_THROW(ValidateCorpus(g, DefaultOntology()), ValidationError);
}

TEST(GoldStoreTest, IntegerConceptNeedsValue) {
  GoldCorpus g = SixSections();
  g.annotations[4].numeric_value.reset();
  EXPECT_THROW(ValidateCorpus(g, DefaultOntology()), ValidationError);
}

TEST(GoldStoreTest, UnknownConceptIsRejected) {
  GoldCorpus g = SixSections();
  g.annotations[0].concept_id = "xyz";
  EXPECT_THROW(ValidateCorpus(g, DefaultOntology()), ValidationError);
}

TEST(GoldStoreTest, RoundTripsThroughJsonlWithCodePointOffsets) {
  GoldBuilder b;
  b.AddSection("U1", Origin::kRandom, {"caf\xC3\xA9 stretch R shoulder", "r\xC3\xA9p flexion"});
  b.Annotate("U1", 0, "shoulder", "loc_shoulder").Annotate("U1", 1, "flexion", "plane_flexion");
  GoldCorpus g = b.Build();
  std::ostringstream out;
  WriteGold(out, g);
  // "shoulder" starts at code point 15 (byte 16) of the first item.
  EXPECT_NE(out.str().find("\"start\":15"), std::string::npos);
  std::istringstream in(out.str());
  GoldCorpus back = ReadGold(in, DefaultOntology());
  EXPECT_EQ(back.sections, g.sections);
  EXPECT_EQ(back.sequences, g.sequences);
  EXPECT_EQ(back.annotations, g.annotations);
  EXPECT_EQ(back.origin, g.origin);
}

TEST(GoldStoreTest, MissingIntegerValueIsNormalizedFromText) {
  std::istringstream in(
      R"({"section":{"id":"A","text":"1: walk 2 min","origin":"random"},)"
      R"("sequences":[{"index":0,"label_number":"1","start":3,"end":13}],)"
      R"("annotations":[{"seq_index":0,"concept_id":"duration","start":5,"end":10}]})");
  GoldCorpus g = ReadGold(in, DefaultOntology());
  ASSERT_EQ(g.annotations.size(), 1u);
  EXPECT_EQ(g.annotations[0].numeric_value, 120);
}

TEST(GoldStoreTest, MalformedRecordIsParseError) {
  std::istringstream in("{\"section\": 3}\n");
  EXPECT_THROW(ReadGold(in, DefaultOntology()), ParseError);
}

GoldCorpus Strata(int enriched, int random) {
  GoldBuilder b;
  for (int i = 0; i < enriched; ++i) b.AddSection("E" + std::to_string(i), Origin::kEnriched, {"x"});
  for (int i = 0; i < random; ++i) b.AddSection("R" + std::to_string(i), Origin::kRandom, {"x"});
  return b.Build();
}

TEST(SplitTest, DefaultProportions) {
  GoldCorpus g = SplitTrainTest(Strata(150, 150), 125, 42);
  int train = 0, test = 0, train_enriched = 0;
  for (const auto& [id, s] : g.split) {
    (s == Split::kTrain ? train : test)++;
    if (s == Split::kTrain && g.origin.at(id) == Origin::kEnriched) ++train_enriched;
  }
  EXPECT_EQ(train, 250);
  EXPECT_EQ(test, 50);
  EXPECT_EQ(train_enriched, 125);
}

TEST(SplitTest, SameSeedSameSplitDifferentSeedDiffers) {
  GoldCorpus base = Strata(40, 40);
  EXPECT_EQ(SplitTrainTest(base, 30, 1).split, SplitTrainTest(base, 30, 1).split);
  EXPECT_NE(SplitTrainTest(base, 30, 1).split, SplitTrainTest(base, 30, 2).split);
}

TEST(SplitTest, SmallStratumThrows) {
  EXPECT_THROW(SplitTrainTest(Strata(100, 0), 125, 42), InsufficientSections);
}

TEST(SplitTest, SubsetKeepsOnlyThatSplit) {
  GoldCorpus g = SplitTrainTest(SixSections(), 2, 3);
  GoldCorpus train = g.Subset(Split::kTrain);
  EXPECT_EQ(train.sections.size(), 4u);
  EXPECT_EQ(train.sequences.size(), 8u);
  EXPECT_EQ(train.annotations.size(), 32u);
}

TEST(ProjectionTest, DirectProjection) {
  GoldBuilder b;
  b.AddSection("P", Origin::kRandom, {"L shoulder flexion", "x12", "flexion and flexion"});
  b.Annotate("P", 0, "L", "side_left").Annotate("P", 0, "flexion", "plane_flexion");
  b.Annotate("P", 1, "x12", "reps", 12);
  b.Annotate("P", 2, "flexion", "plane_flexion");
  GoldCorpus g = b.Build();
  g.annotations.push_back({{"P", 2}, "plane_flexion", 12, 19, std::nullopt});
  LabelMap labels = SequenceTargets(g, DefaultOntology());
  ASSERT_EQ(labels.size(), 3u);
  EXPECT_EQ(labels.at(SequenceRef{"P", 0}), (std::set<std::string>{"plane_flexion", "side_left"}));
  EXPECT_TRUE(labels.at(SequenceRef{"P", 1}).empty());
  EXPECT_EQ(labels.at(SequenceRef{"P", 2}), (std::set<std::string>{"plane_flexion"}));
}

// Textbook Fleiss kappa, written independently of the library: per-item
// agreement as a fraction, then chance agreement from category shares.
double OracleKappa(const std::vector<std::vector<int>>& m, int n) {
  const double items = static_cast<double>(m.size());
  const std::size_t k = m[0].size();
  double p_bar = 0.0;
  std::vector<double> share(k, 0.0);
  for (const auto& row : m) {
    double agree = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      agree += static_cast<double>(row[j]) * (row[j] - 1);
      share[j] += row[j];
    }
    p_bar += agree / (static_cast<double>(n) * (n - 1));
  }
  p_bar /= items;
  double p_e = 0.0;
  for (double s : share) p_e += (s / (items * n)) * (s / (items * n));
  return (p_bar - p_e) / (1.0 - p_e);
}

TEST(FleissKappaTest, PerfectAgreementIsExactlyOne) {
  RatingTable t{3, {}};
  for (int i = 0; i < 20; ++i) t.counts.push_back(i % 2 ? std::vector<int>{3, 0} : std::vector<int>{0, 3});
  EXPECT_EQ(FleissKappa(t), 1.0);
}

TEST(FleissKappaTest, HandExampleMatchesOracle) {
  RatingTable t{3, {}};
  for (int i = 0; i < 5; ++i) t.counts.push_back({3, 0});
  for (int i = 0; i < 5; ++i) t.counts.push_back({1, 2});
  // P_bar = (5*1 + 5/3)/10 = 2/3; p = (20/30, 10/30); P_e = 5/9; kappa = 1/4.
  EXPECT_NEAR(FleissKappa(t), 0.25, 1e-12);
  EXPECT_NEAR(FleissKappa(t), OracleKappa(t.counts, 3), 1e-9);
}

TEST(FleissKappaTest, RandomTablesMatchOracle) {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 50; ++trial) {
    int raters = 2 + static_cast<int>(gen() % 5);
    int k = 2 + static_cast<int>(gen() % 3);
    int items = 1 + static_cast<int>(gen() % 40);
    RatingTable t{raters, {}};
    for (int i = 0; i < items; ++i) {
      std::vector<int> row(k, 0);
      for (int r = 0; r < raters; ++r) row[gen() % k]++;
      t.counts.push_back(row);
    }
    bool single = false;
    for (int j = 0; j < k; ++j) {
      int col = 0;
      for (const auto& row : t.counts) col += row[j];
      single = single || col == items * raters;
    }
    if (single) continue;
    EXPECT_NEAR(FleissKappa(t), OracleKappa(t.counts, raters), 1e-9);
  }
}

TEST(FleissKappaTest, ShapeErrors) {
  EXPECT_THROW(FleissKappa(RatingTable{1, {{1, 0}}}), ShapeError);
  EXPECT_THROW(FleissKappa(RatingTable{3, {}}), ShapeError);
  EXPECT_THROW(FleissKappa(RatingTable{3, {{3, 0}, {2, 0}}}), ShapeError);
  EXPECT_THROW(FleissKappa(RatingTable{3, {{3, 0}, {2, 1, 0}}}), ShapeError);
}

TEST(FleissKappaTest, AgreementTableFromAnnotators) {
  GoldCorpus a = SixSections();
  GoldCorpus b = a;
  std::vector<GoldCorpus> both = {a, b};
  RatingTable t = BuildAgreementTable(both, DefaultOntology());
  EXPECT_EQ(t.raters, 2);
  EXPECT_EQ(t.items(), static_cast<int>(a.sequences.size() *
                                        DefaultOntology().BinaryConceptIds().size()));
  EXPECT_EQ(FleissKappa(t), 1.0);

  b.annotations.erase(b.annotations.begin());  // drop one rom_active span
  both = {a, b};
  double kappa = FleissKappa(BuildAgreementTable(both, DefaultOntology()));
  EXPECT_LT(kappa, 1.0);
  EXPECT_GT(kappa, 0.7);
}

}  // namespace
}  // namespace rehab
