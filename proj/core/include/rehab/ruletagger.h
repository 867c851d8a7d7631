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

// Declarative regular-expression span tagger.
//
// A rules file is JSONL, one rule per line:
//
//   {"concept_id": "side_left", "pattern": "\\bL\\b", "priority": 10,
//    "case_sensitive": true,
//    "context": {"require_following": "\\s*(?:UE|LE|shoulder)\\b",
//                "forbid_preceding": "...", "window": 24}}
//
// Lines starting with '#' and blank lines are ignored. Patterns use Perl
// syntax and are case-insensitive unless case_sensitive is set. Following
// guards must match at the character right after the span; preceding guards
// must match ending right before it. Both look at most `window` bytes away.
//
// Tagging collects every guarded match of every rule. Overlapping matches of
// the same concept collapse to the widest one (ties: earlier start, then
// rule order); matches of different concepts are all kept. Spans of Integer
// concepts carry the normalized number found in the span.

#ifndef REHAB_RULETAGGER_H_
#define REHAB_RULETAGGER_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/regex.hpp>

#include "rehab/goldstore.h"
#include "rehab/ingest.h"
#include "rehab/ontology.h"

namespace rehab {

struct ContextGuard {
  std::optional<std::string> require_following;
  std::optional<std::string> require_preceding;
  std::optional<std::string> forbid_following;
  std::optional<std::string> forbid_preceding;
  std::size_t window = 24;
};

struct Rule {
  std::string concept_id;
  std::string pattern;
  int priority = 0;
  bool case_sensitive = false;
  ContextGuard context;
  // 1-based line in the source file, 0 when built in memory.
  int line = 0;
};

struct NumericValue {
  NumericKind kind = NumericKind::kReps;
  std::int64_t value = 0;

  bool operator==(const NumericValue&) const = default;
};

// Reads the number out of a matched span. Duration is returned in seconds:
// "min", "minute(s)" and "'" mean minutes, "sec", "s" and "\"" seconds, and
// a bare number is taken as seconds. For Sets and Reps the "NxM" form
// yields N and M respectively; otherwise the first integer is used.
// Throws NoNumber when the text holds no digits.
NumericValue NormalizeNumeric(std::string_view matched_text, NumericKind kind);

// Parses the "NxM" sets-by-reps form anywhere in the text.
std::optional<std::pair<std::int64_t, std::int64_t>> ParseSetsReps(
    std::string_view text);

class CompiledTagger {
 public:
  // Throws PatternError for patterns that do not compile and UnknownConcept
  // for concept ids missing from the ontology.
  CompiledTagger(std::vector<Rule> rules, const Ontology& ontology);

  // Spans for one sequence, sorted by (start, end, concept_id).
  std::vector<SpanAnnotation> Tag(const Sequence& sequence) const;
  std::vector<SpanAnnotation> TagAll(std::span<const Sequence> sequences) const;

  // Rules in application order: priority descending, file order within ties.
  std::span<const Rule> rules() const { return rules_; }
  std::size_t size() const { return rules_.size(); }
  // Concepts with at least one rule.
  std::vector<std::string> CoveredConcepts() const;

 private:
  struct Compiled {
    boost::regex pattern;
    std::optional<boost::regex> require_following;
    std::optional<boost::regex> require_preceding;
    std::optional<boost::regex> forbid_following;
    std::optional<boost::regex> forbid_preceding;
    std::optional<NumericKind> numeric;
  };

  bool GuardsPass(const Rule& rule, const Compiled& compiled,
                  std::string_view text, std::size_t start,
                  std::size_t end) const;

  std::vector<Rule> rules_;
  std::vector<Compiled> compiled_;
};

std::vector<Rule> ParseRules(std::istream& in);
CompiledTagger CompileRules(std::istream& in, const Ontology& ontology);
CompiledTagger CompileRules(const std::string& path, const Ontology& ontology);

inline std::vector<SpanAnnotation> TagSequence(const CompiledTagger& tagger,
                                               const Sequence& sequence) {
  return tagger.Tag(sequence);
}

// Sequence-level labels from predicted spans; the same contract as
// SequenceTargets so that tagger output can be scored as a classifier.
inline LabelMap ProjectToSequences(std::span<const SpanAnnotation> spans,
                                   std::span<const Sequence> sequences,
                                   const Ontology& ontology) {
  return ProjectSpans(spans, sequences, ontology);
}

}  // namespace rehab

#endif  // REHAB_RULETAGGER_H_
