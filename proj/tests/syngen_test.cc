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


#include "rehab/syngen.h"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "rehab/error.h"
#include "rehab/evaluator.h"
#include "rehab/ruletagger.h"
#include "test_util.h"

namespace rehab {
namespace {

using testing::DataPath;
using testing::DefaultOntology;

const Phrasebook& DefaultPhrasebook() {
  static const Phrasebook book = Phrasebook::Load(DataPath("phrasebook.json"));
  return book;
}

const CompiledTagger& DefaultTagger() {
  static const CompiledTagger tagger = CompileRules(DataPath("rules.jsonl"), DefaultOntology());
  return tagger;
}

GeneratorConfig Config(std::uint64_t seed, int sections) {
  GeneratorConfig c;
  c.seed = seed;
  c.n_sections = sections;
  c.phrasebook = DefaultPhrasebook();
  return c;
}

std::string GoldBytes(const GoldCorpus& g) {
  std::ostringstream out;
  WriteGold(out, g);
  return out.str();
}

TEST(PhrasebookTest, DefaultIsValidAndCoversTheOntology) {
  EXPECT_NO_THROW(DefaultPhrasebook().Validate(DefaultOntology()));
  std::vector<std::string> covered = DefaultPhrasebook().Concepts();
  for (const std::string& id : DefaultOntology().BinaryConceptIds()) {
    EXPECT_TRUE(std::binary_search(covered.begin(), covered.end(), id)) << id;
  }
}

TEST(PhrasebookTest, RejectsBrokenBooks) {
  EXPECT_THROW(Phrasebook::Parse("not json"), ConfigError);
  EXPECT_THROW(Phrasebook::Parse(R"({"templates": []})"), ConfigError);
  const char* unknown_slot = R"({"templates": [{"name": "t", "slots": ["nope"]}], "slots": {}})";
  EXPECT_THROW(Phrasebook::Parse(unknown_slot).Validate(DefaultOntology()), ConfigError);
  const char* unknown_concept = R"({"templates": [{"name": "t", "slots": ["a"]}],
    "slots": {"a": {"probability": 1, "options": [{"text": "x", "concepts": ["no_such"]}]}}})";
  EXPECT_THROW(Phrasebook::Parse(unknown_concept).Validate(DefaultOntology()), ConfigError);
}

TEST(GenerateCorpusTest, DeterministicPerSeed) {
  SyntheticCorpus a = GenerateCorpus(Config(7, 40), DefaultOntology());
  SyntheticCorpus b = GenerateCorpus(Config(7, 40), DefaultOntology());
  SyntheticCorpus c = GenerateCorpus(Config(8, 40), DefaultOntology());
  EXPECT_EQ(GoldBytes(a.gold), GoldBytes(b.gold));
  EXPECT_NE(GoldBytes(a.gold), GoldBytes(c.gold));
}

TEST(GenerateCorpusTest, ShapeAndOrigins) {
  SyntheticCorpus s = GenerateCorpus(Config(3, 30), DefaultOntology());
  EXPECT_NO_THROW(ValidateCorpus(s.gold, DefaultOntology()));
  ASSERT_EQ(s.gold.sections.size(), 30u);
  EXPECT_EQ(s.gold.sections[0].doc_id, "SYN_THERAPY_0001");
  int enriched = 0;
  for (const auto& [id, o] : s.gold.origin) enriched += o == Origin::kEnriched;
  EXPECT_EQ(enriched, 15);
  EXPECT_EQ(s.trace.size(), s.gold.sequences.size());
  const auto [lo, hi] = DefaultPhrasebook().items_per_section;
  std::map<std::string, int> per_section;
  for (const Sequence& q : s.gold.sequences) ++per_section[q.section_id];
  for (const auto& [id, n] : per_section) {
    EXPECT_GE(n, lo);
    EXPECT_LE(n, hi);
  }
  // Re-segmenting the section text reproduces the sequences.
  for (const Section& sec : s.gold.sections) {
    std::vector<Sequence> again = SegmentSequences(sec);
    std::vector<Sequence> stored;
    for (const Sequence& q : s.gold.sequences) {
      if (q.section_id == sec.doc_id) stored.push_back(q);
    }
    EXPECT_EQ(again, stored) << sec.doc_id;
  }
}

TEST(GenerateCorpusTest, NoiseFreeRulesAreExact) {
  SyntheticCorpus s = GenerateCorpus(Config(11, 80), DefaultOntology());
  std::vector<SpanAnnotation> pred = DefaultTagger().TagAll(s.gold.sequences);
  std::vector<std::string> ids = DefaultOntology().BinaryConceptIds();
  for (const std::string& id : {"duration", "sets", "reps"}) ids.push_back(id);
  for (const std::string& id : ids) {
    Prf p = NerExactPrf(pred, s.gold.annotations, id);
    if (p.tp + p.fn == 0) continue;
    EXPECT_EQ(p.f1, 1.0) << id << " tp=" << p.tp << " fp=" << p.fp << " fn=" << p.fn;
  }
  EXPECT_EQ(s.typos, 0);
  EXPECT_EQ(s.placeholder_substitutions, 0);
  EXPECT_TRUE(s.dropped.empty());
}

TEST(GenerateCorpusTest, PlaceholderRateIsHonoured) {
  GeneratorConfig c = Config(5, 300);
  c.noise.placeholder_rate = 0.1;
  SyntheticCorpus s = GenerateCorpus(c, DefaultOntology());
  ASSERT_GT(s.name_slots, 100);
  const double n = s.name_slots;
  const double sigma = std::sqrt(n * 0.1 * 0.9);
  EXPECT_NEAR(s.placeholder_substitutions, 0.1 * n, 4 * sigma);
  int counted = 0;
  for (const Section& sec : s.gold.sections) counted += sec.placeholder_count;
  EXPECT_GE(counted, s.placeholder_substitutions);
  EXPECT_NO_THROW(ValidateCorpus(s.gold, DefaultOntology()));
}

TEST(GenerateCorpusTest, TyposKeepSpansAligned) {
  GeneratorConfig c = Config(9, 60);
  c.noise.typo_rate = 0.05;
  SyntheticCorpus s = GenerateCorpus(c, DefaultOntology());
  EXPECT_GT(s.typos, 0);
  EXPECT_NO_THROW(ValidateCorpus(s.gold, DefaultOntology()));
  for (const SpanAnnotation& a : s.gold.annotations) EXPECT_LT(a.start, a.end);
}

TEST(GenerateCorpusTest, HeldOutVariantsEscapeTheRules) {
  GeneratorConfig c = Config(13, 80);
  c.heldout_rate = 0.5;
  SyntheticCorpus s = GenerateCorpus(c, DefaultOntology());
  EXPECT_NO_THROW(ValidateCorpus(s.gold, DefaultOntology()));
  std::vector<SpanAnnotation> pred = DefaultTagger().TagAll(s.gold.sequences);
  std::int64_t fn = 0;
  for (const std::string& id : DefaultOntology().BinaryConceptIds()) {
    fn += NerExactPrf(pred, s.gold.annotations, id).fn;
  }
  EXPECT_GT(fn, 0);
}

TEST(GenerateCorpusTest, MinPositivesAreForced) {
  GeneratorConfig c = Config(21, 20);
  c.min_positives["side_contralateral"] = 30;
  SyntheticCorpus s = GenerateCorpus(c, DefaultOntology());
  LabelMap labels = SequenceTargets(s.gold, DefaultOntology());
  int n = 0;
  for (const auto& [ref, set] : labels) n += set.count("side_contralateral");
  EXPECT_GE(n, 30);
}

TEST(GenerateCorpusTest, RejectsBadConfigs) {
  GeneratorConfig c = Config(1, 0);
  EXPECT_THROW(GenerateCorpus(c, DefaultOntology()), ConfigError);
  c = Config(1, 10);
  c.noise.typo_rate = 1.5;
  EXPECT_THROW(GenerateCorpus(c, DefaultOntology()), ConfigError);
  c = Config(1, 10);
  c.heldout_rate = -0.1;
  EXPECT_THROW(GenerateCorpus(c, DefaultOntology()), ConfigError);
  c = Config(1, 10);
  c.min_positives["side_left"] = -1;
  EXPECT_THROW(GenerateCorpus(c, DefaultOntology()), ConfigError);
}

TEST(DefaultSplitTest, FiveSixthsOfEachStratum) {
  SyntheticCorpus s = GenerateCorpus(Config(4, 60), DefaultOntology());
  GoldCorpus g = DefaultSplit(s.gold, 4);
  std::map<std::pair<Origin, Split>, int> n;
  for (const auto& [id, split] : g.split) ++n[{g.origin.at(id), split}];
  EXPECT_EQ((n[{Origin::kEnriched, Split::kTrain}]), 25);
  EXPECT_EQ((n[{Origin::kRandom, Split::kTrain}]), 25);
  EXPECT_EQ((n[{Origin::kEnriched, Split::kTest}]), 5);
  EXPECT_EQ((n[{Origin::kRandom, Split::kTest}]), 5);
}

TEST(RenderNotesTest, IngestRecoversTheSections) {
  SyntheticCorpus s = GenerateCorpus(Config(6, 12), DefaultOntology());
  std::vector<NoteFile> notes = RenderNotes(s, 6);
  EXPECT_GT(notes.size(), s.gold.sections.size());
  std::vector<NoteFile> kept = FilterNoteFiles(notes);
  ASSERT_EQ(kept.size(), s.gold.sections.size());
  for (std::size_t i = 0; i < kept.size(); ++i) {
    std::optional<Section> sec = ExtractTherapySection(kept[i]);
    ASSERT_TRUE(sec.has_value()) << kept[i].filename;
    EXPECT_EQ(sec->doc_id, s.gold.sections[i].doc_id);
    EXPECT_EQ(sec->text, s.gold.sections[i].text);
  }
}

}  // namespace
}  // namespace rehab
