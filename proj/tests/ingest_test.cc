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


#include "rehab/ingest.h"

#include <gtest/gtest.h>

#include <set>

#include "rehab/error.h"
#include "test_util.h"

namespace rehab {
namespace {

using testing::DefaultOntology;

std::vector<std::string> Names(const std::vector<NoteFile>& files) {
  std::vector<std::string> out;
  for (const NoteFile& f : files) out.push_back(f.filename);
  return out;
}

TEST(FilterNoteFilesTest, KeepsFilenamesContainingTherapy) {
  std::vector<NoteFile> in = {{"PT_THERAPY_001.txt", ""}, {"CARDIOLOGY_002.txt", ""}};
  EXPECT_EQ(Names(FilterNoteFiles(in)), std::vector<std::string>{"PT_THERAPY_001.txt"});
}

TEST(FilterNoteFilesTest, EmptyInput) { EXPECT_TRUE(FilterNoteFiles({}).empty()); }

TEST(FilterNoteFilesTest, MatchIsCaseSensitiveByDefault) {
  std::vector<NoteFile> in = {{"therapy_003.txt", ""}};
  EXPECT_TRUE(FilterNoteFiles(in).empty());
  EXPECT_EQ(FilterNoteFiles(in, /*ignore_case=*/true).size(), 1u);
}

TEST(ExtractTherapySectionTest, CarvesBetweenHeaderAndNextHeading) {
  NoteFile note{"PT_THERAPY_001.txt",
                "SUBJECTIVE:\nfeels ok\nTHERAPEUTIC PROCEDURES:\n1: squats 2x10\nASSESSMENT:\ngood\n"};
  std::optional<Section> s = ExtractTherapySection(note);
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(s->text, "1: squats 2x10");
  EXPECT_EQ(s->doc_id, "PT_THERAPY_001");
  EXPECT_EQ(s->source_filename, "PT_THERAPY_001.txt");
}

TEST(ExtractTherapySectionTest, RunsToEndOfFileWithoutTerminator) {
  NoteFile note{"A_THERAPY.txt", "Therapeutic Procedure -\n1: bridges x10\n2: clamshells x10\n"};
  std::optional<Section> s = ExtractTherapySection(note);
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(s->text, "1: bridges x10\n2: clamshells x10");
}

TEST(ExtractTherapySectionTest, NoHeaderMeansNoSection) {
  EXPECT_FALSE(ExtractTherapySection({"X_THERAPY.txt", "PLAN:\ncontinue\n"}).has_value());
}

TEST(ExtractTherapySectionTest, CountsPlaceholders) {
  NoteFile note{"B_THERAPY.txt",
                "THERAPEUTIC PROCEDURES:\n7: [PERSONALNAME] maze - AROM LUE - 3 rep\n"};
  std::optional<Section> s = ExtractTherapySection(note);
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(s->placeholder_count, 1);
  EXPECT_EQ(CountPlaceholders("[ADDRESS] and [PERSONALNAME], not [lower]"), 2);
}

TEST(SegmentSequencesTest, SplitsOnLineInitialEnumerators) {
  Section s{"S1", "1: squats 2x10\n2: SLR- 2x10 deferred to HEP", "S1.txt", 0};
  std::vector<Sequence> seqs = SegmentSequences(s);
  ASSERT_EQ(seqs.size(), 2u);
  EXPECT_EQ(seqs[1].text, "SLR- 2x10 deferred to HEP");
  EXPECT_EQ(seqs[1].label_number, "2");
  EXPECT_EQ(seqs[1].index, 1);
  for (const Sequence& q : seqs) {
    EXPECT_EQ(s.text.substr(q.start, q.end - q.start), q.text);
  }
}

TEST(SegmentSequencesTest, FreeTextHasNoSequences) {
  EXPECT_TRUE(SegmentSequences({"S", "free text with no numbering", "", 0}).empty());
}

TEST(SegmentSequencesTest, EmptyItemsAreSkipped) {
  std::vector<Sequence> seqs = SegmentSequences({"S", "1:\n2: heel raises x10", "", 0});
  ASSERT_EQ(seqs.size(), 1u);
  EXPECT_EQ(seqs[0].text, "heel raises x10");
  EXPECT_EQ(seqs[0].label_number, "2");
  EXPECT_EQ(seqs[0].index, 0);
}

TEST(SegmentSequencesTest, AcceptsOtherSeparatorsAndContinuationLines) {
  std::vector<Sequence> seqs =
      SegmentSequences({"S", "3. bridges\n  with band\n4) rows 1.5 lbs", "", 0});
  ASSERT_EQ(seqs.size(), 2u);
  EXPECT_EQ(seqs[0].text, "bridges\n  with band");
  EXPECT_EQ(seqs[1].text, "rows 1.5 lbs");
}

TEST(EnrichmentScoreTest, HandCountedExample) {
  // Type of Motion, Side, Location, Plane and Reps.
  EXPECT_EQ(EnrichmentScore("AROM left shoulder flexion x10", DefaultOntology()), 5);
}

TEST(EnrichmentScoreTest, Bounds) {
  EXPECT_EQ(EnrichmentScore("", DefaultOntology()), 0);
  EXPECT_EQ(EnrichmentScore("AROM left shoulder flexion 30 sec 2 sets for strength "
                            "strengthening standing",
                            DefaultOntology()),
            9);
}

TEST(EnrichmentScoreTest, KeywordsNeedLetterBoundaries) {
  // "arm" inside "warm" is not a location hit.
  EXPECT_EQ(EnrichmentScore("warmup", DefaultOntology()), 0);
}

Section Numbered(int i, const std::string& text) {
  char id[16];
  std::snprintf(id, sizeof id, "N%04d", i);
  return {id, text, std::string(id) + ".txt", 0};
}

const char* kNine =
    "AROM left shoulder flexion 30 sec 2 sets for strength strengthening standing";

TEST(SelectCandidateSetsTest, DefaultSizes) {
  SelectionOptions o;
  EXPECT_EQ(o.n_enriched, 300);
  EXPECT_EQ(o.n_random, 300);
  EXPECT_EQ(o.min_len, 200);
}

TEST(SelectCandidateSetsTest, DeterministicAndDisjoint) {
  std::vector<Section> pool;
  std::string filler(210, 'z');
  for (int i = 0; i < 40; ++i) pool.push_back(Numbered(i, kNine));
  for (int i = 40; i < 120; ++i) pool.push_back(Numbered(i, "note " + filler));
  for (int i = 120; i < 130; ++i) pool.push_back(Numbered(i, "short"));
  SelectionOptions o{20, 30, 200, 7};
  CandidateSets a = SelectCandidateSets(pool, DefaultOntology(), o);
  CandidateSets b = SelectCandidateSets(pool, DefaultOntology(), o);
  EXPECT_EQ(a.enriched, b.enriched);
  EXPECT_EQ(a.random, b.random);
  ASSERT_EQ(a.enriched.size(), 20u);
  ASSERT_EQ(a.random.size(), 30u);
  std::set<std::string> ids;
  for (const Section& s : a.enriched) {
    EXPECT_EQ(EnrichmentScore(s, DefaultOntology()), 9);
    ids.insert(s.doc_id);
  }
  for (const Section& s : a.random) {
    EXPECT_GE(s.text.size(), 200u);
    EXPECT_TRUE(ids.insert(s.doc_id).second);
  }
}

TEST(SelectCandidateSetsTest, SmallEnrichedPoolThrows) {
  std::vector<Section> pool;
  for (int i = 0; i < 10; ++i) pool.push_back(Numbered(i, kNine));
  EXPECT_THROW(SelectCandidateSets(pool, DefaultOntology(), SelectionOptions{}),
               InsufficientSections);
}

TEST(ReadNoteDirectoryTest, ReadsSortedFiles) {
  testing::TempDir dir;
  testing::WriteFile(dir.File("b_THERAPY.txt"), "two");
  testing::WriteFile(dir.File("a_THERAPY.txt"), "one");
  std::vector<NoteFile> files = ReadNoteDirectory(dir.path().string());
  ASSERT_EQ(files.size(), 2u);
  EXPECT_EQ(files[0].filename, "a_THERAPY.txt");
  EXPECT_EQ(files[0].text, "one");
}

}  // namespace
}  // namespace rehab
