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

// Gold-standard annotations: the corpus model, validation, the stratified
// train/test split, sequence-level binary targets and Fleiss's kappa.
//
// gold.jsonl holds one record per section:
//
//   {"section": {"id": "...", "text": "...", "origin": "enriched"},
//    "sequences": [{"index": 0, "label_number": "7", "start": 0, "end": 31}],
//    "annotations": [{"seq_index": 0, "concept_id": "rom_active",
//                     "start": 0, "end": 4}, ...],
//    "split": "train"}
//
// Sequence offsets are relative to the section text, annotation offsets to
// the sequence text, both counted in Unicode scalar values.

#ifndef REHAB_GOLDSTORE_H_
#define REHAB_GOLDSTORE_H_

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "rehab/ingest.h"
#include "rehab/ontology.h"

namespace rehab {

struct SequenceRef {
  std::string section_id;
  int index = 0;

  auto operator<=>(const SequenceRef&) const = default;
  bool operator==(const SequenceRef&) const = default;
};

// A labelled character range inside one sequence, gold or predicted.
// Offsets are bytes into the sequence text while in memory.
struct SpanAnnotation {
  SequenceRef ref;
  std::string concept_id;
  std::size_t start = 0;
  std::size_t end = 0;
  // Seconds for Duration, a count for Sets and Reps; absent otherwise.
  std::optional<std::int64_t> numeric_value;

  auto operator<=>(const SpanAnnotation&) const = default;
  bool operator==(const SpanAnnotation&) const = default;
};

enum class Origin { kEnriched, kRandom };
enum class Split { kTrain, kTest };

std::string_view OriginName(Origin origin);
std::string_view SplitName(Split split);

struct GoldCorpus {
  std::vector<Section> sections;
  std::vector<Sequence> sequences;
  std::vector<SpanAnnotation> annotations;
  std::map<std::string, Split> split;
  std::map<std::string, Origin> origin;

  // Rebuilds the sequence lookup table; call after mutating `sequences`.
  void Reindex();
  const Sequence* FindSequence(const SequenceRef& ref) const;
  const Sequence& GetSequence(const SequenceRef& ref) const;

  bool HasSplit() const { return !split.empty(); }
  // Sequences whose section is in the given split, in corpus order.
  std::vector<Sequence> SequencesIn(Split which) const;
  std::vector<SpanAnnotation> AnnotationsIn(Split which) const;
  // Corpus restricted to one split (sections, sequences and annotations).
  GoldCorpus Subset(Split which) const;

 private:
  std::map<SequenceRef, std::size_t> sequence_index_;
};

inline SequenceRef RefOf(const Sequence& s) { return {s.section_id, s.index}; }

// Checks every corpus invariant against the ontology. Throws
// ValidationError naming the first offending record.
void ValidateCorpus(const GoldCorpus& corpus, const Ontology& ontology);

// Reads gold JSONL and validates it.
GoldCorpus ReadGold(std::istream& in, const Ontology& ontology);
GoldCorpus ValidateGold(const std::string& path, const Ontology& ontology);
void WriteGold(std::ostream& out, const GoldCorpus& corpus);

// Seeded draw of `per_origin_train` sections from each origin stratum into
// the training split; everything else goes to test.
GoldCorpus SplitTrainTest(GoldCorpus corpus, int per_origin_train,
                          std::uint64_t seed);

// Positive concept ids per sequence. Every sequence of the labelled set is a
// key, so absent concepts are false.
using LabelMap = std::map<SequenceRef, std::set<std::string>>;

// True for (sequence, concept) iff at least one span of that concept lies in
// the sequence. Integer-category concepts are never targets.
LabelMap ProjectSpans(std::span<const SpanAnnotation> spans,
                      std::span<const Sequence> sequences,
                      const Ontology& ontology);

LabelMap SequenceTargets(const GoldCorpus& corpus, const Ontology& ontology);
LabelMap SequenceTargets(const GoldCorpus& corpus, const Ontology& ontology,
                         Split which);

// Fleiss's kappa input: counts[i][k] is the number of raters who put item i
// in category k. Every row sums to `raters`.
struct RatingTable {
  int raters = 0;
  std::vector<std::vector<int>> counts;

  int items() const { return static_cast<int>(counts.size()); }
  int categories() const { return counts.empty() ? 0 : static_cast<int>(counts[0].size()); }
};

// Throws ShapeError for ragged or inconsistent tables and
// DegenerateDistribution when all ratings fall in one category without
// perfect agreement.
double FleissKappa(const RatingTable& table);

// Agreement table over several annotators' copies of the same sections:
// one item per (sequence, binary concept), categories {mentioned, not}.
// Throws ShapeError if the annotators' sequence sets differ.
RatingTable BuildAgreementTable(std::span<const GoldCorpus> annotators,
                                const Ontology& ontology);

}  // namespace rehab

#endif  // REHAB_GOLDSTORE_H_
