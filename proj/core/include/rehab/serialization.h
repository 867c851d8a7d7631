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

// JSONL interchange for sections, sequences and span predictions. All
// offsets in these files are counted in Unicode scalar values.
//
//   sections.jsonl   {"id","text","source_filename","placeholder_count"[,"origin"]}
//   sequences.jsonl  {"section_id","index","label_number","text","start","end"}
//   spans.jsonl      {"method","section_id","seq_index","concept_id","start","end"[,"numeric_value"]}
//   labels.jsonl     {"method","section_id","seq_index","labels":[concept ids]}

#ifndef REHAB_SERIALIZATION_H_
#define REHAB_SERIALIZATION_H_

#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rehab/goldstore.h"
#include "rehab/ingest.h"

namespace rehab {

inline constexpr const char* kSectionsSchema = "rehab.sections/1";
inline constexpr const char* kSequencesSchema = "rehab.sequences/1";
inline constexpr const char* kGoldSchema = "rehab.gold/1";
inline constexpr const char* kSpansSchema = "rehab.spans/1";
inline constexpr const char* kLabelsSchema = "rehab.labels/1";
inline constexpr const char* kModelSchema = "rehab.model/1";
inline constexpr const char* kVocabSchema = "rehab.vocab/1";
inline constexpr const char* kReportSchema = "rehab.report/1";
inline constexpr const char* kRulesSchema = "rehab.rules/1";
inline constexpr const char* kOntologySchema = "rehab.ontology/1";
inline constexpr const char* kReplaySchema = "rehab.replay/1";

void WriteSections(std::ostream& out, std::span<const Section> sections,
                   const std::map<std::string, Origin>* origins = nullptr);
std::vector<Section> ReadSections(std::istream& in);

void WriteSequences(std::ostream& out, std::span<const Sequence> sequences,
                    std::span<const Section> sections);
// Reads sequences.jsonl, or the sequences of every record when the input is
// a gold.jsonl file. Gold records give byte offsets. sequences.jsonl has no
// section text to convert against, so its start/end stay in code points;
// the sequence text is authoritative there.
std::vector<Sequence> ReadSequencesOrGold(std::istream& in);

// Span offsets are converted against the text of the referenced sequence.
void WriteSpans(std::ostream& out, const std::string& method,
                std::span<const SpanAnnotation> spans,
                std::span<const Sequence> sequences);

void WriteLabels(std::ostream& out, const std::string& method,
                 const LabelMap& labels);

// A prediction file holds either spans or sequence labels for one method.
struct PredictionFile {
  std::string method;
  std::optional<std::vector<SpanAnnotation>> spans;
  std::optional<LabelMap> labels;
};
// `corpus` supplies the sequence texts needed to convert span offsets.
PredictionFile ReadPredictions(std::istream& in, const GoldCorpus& corpus);

}  // namespace rehab

#endif  // REHAB_SERIALIZATION_H_
