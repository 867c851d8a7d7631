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


// Scoring: exact-span NER, sequence-level binary labels and extracted
// numbers, the sparse-concept filter and the per-concept comparison report.
//
// Every ratio uses 0/0 = 0.

#ifndef REHAB_EVALUATOR_H_
#define REHAB_EVALUATOR_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "rehab/goldstore.h"
#include "rehab/ontology.h"

namespace rehab {

struct Prf {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  static Prf FromCounts(std::int64_t tp, std::int64_t fp, std::int64_t fn);
  bool operator==(const Prf&) const = default;
};

// A predicted span is a true positive iff an unused gold span has the same
// sequence, concept and offsets.
Prf NerExactPrf(std::span<const SpanAnnotation> pred,
                std::span<const SpanAnnotation> gold,
                const std::string& concept_id);

// Binary scores over sequences. Throws KeyMismatch unless both maps cover
// the same sequences.
Prf SequencePrf(const LabelMap& pred, const LabelMap& gold,
                const std::string& concept_id);

struct NumericObservation {
  SequenceRef ref;
  NumericKind kind = NumericKind::kReps;
  std::int64_t value = 0;

  auto operator<=>(const NumericObservation&) const = default;
  bool operator==(const NumericObservation&) const = default;
};

// Numbers carried by the spans of Integer-category concepts.
std::vector<NumericObservation> NumericObservations(
    std::span<const SpanAnnotation> spans, const Ontology& ontology);

// Per kind: a prediction is a true positive iff an unused gold observation
// has the same sequence, kind and value.
std::map<NumericKind, Prf> NumericPrf(std::span<const NumericObservation> pred,
                                      std::span<const NumericObservation> gold);

struct Support {
  int train = 0;
  int test = 0;
};

// Positive sequences per binary concept in each split.
std::map<std::string, Support> ConceptSupport(const GoldCorpus& gold,
                                              const Ontology& ontology);

inline constexpr int kMinReportableSupport = 10;

// Concepts with at least `min_support` positive sequences in train and in
// test, in ontology order.
std::vector<std::string> ReportableConcepts(const GoldCorpus& gold,
                                            const Ontology& ontology,
                                            int min_support = kMinReportableSupport);

enum class MethodKind { kNer, kSequence };

struct MethodResult {
  std::string name;
  MethodKind kind = MethodKind::kSequence;
  std::map<std::string, Prf> per_concept;
  // Only for span methods that extract numbers.
  std::map<NumericKind, Prf> numeric;
};

// Scores span predictions on the test split as two methods: exact-span
// NER ("<name>-ner") and the projected sequence labels
// ("<name>-sequence").
std::vector<MethodResult> ScoreSpanMethod(const std::string& name,
                                          std::span<const SpanAnnotation> pred,
                                          const GoldCorpus& gold,
                                          const Ontology& ontology);

// Scores sequence labels on the test split. Predictions for sequences
// outside the test split are ignored; missing test sequences raise
// KeyMismatch.
MethodResult ScoreLabelMethod(const std::string& name, const LabelMap& pred,
                              const GoldCorpus& gold, const Ontology& ontology);

struct ReportRow {
  std::string concept_id;
  std::string category;
  std::string display_name;
  Support support;
  // Aligned with EvalReport::methods.
  std::vector<Prf> scores;
  std::vector<bool> best;
};

struct OmittedConcept {
  std::string concept_id;
  Support support;
  std::string reason;
};

struct EvalReport {
  std::vector<std::string> methods;
  std::vector<MethodKind> method_kinds;
  std::vector<ReportRow> rows;
  // Unweighted mean over rows of precision, recall and f1 per method; the
  // counts are summed.
  std::vector<Prf> macro;
  std::vector<OmittedConcept> omitted;
  std::map<std::string, std::map<NumericKind, Prf>> numeric;
};

// Rows for reportable concepts in ontology order. Method columns run in
// the fixed order rules-ner, rules-sequence, logreg, svm, ada, gb, then any
// other methods by name. Within a row the best sequence method is flagged,
// ties all flagged; NER columns are never flagged.
EvalReport BuildReport(std::span<const MethodResult> results, const GoldCorpus& gold,
                       const Ontology& ontology);

std::string ReportToJson(const EvalReport& report);
std::string ReportToMarkdown(const EvalReport& report);

}  // namespace rehab

#endif  // REHAB_EVALUATOR_H_
