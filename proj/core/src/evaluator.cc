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


#include "rehab/evaluator.h"

#include <algorithm>
#include <set>
#include <tuple>

#include "rehab/error.h"

namespace rehab {
namespace {

double Ratio(std::int64_t num, std::int64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

// Size of the multiset intersection of two sorted ranges.
template <typename T>
std::int64_t MatchCount(std::vector<T> a, std::vector<T> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<T> common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
  return static_cast<std::int64_t>(common.size());
}

const GoldCorpus& TestView(const GoldCorpus& gold, GoldCorpus& storage) {
  if (!gold.HasSplit()) return gold;
  storage = gold.Subset(Split::kTest);
  return storage;
}

}  // namespace

Prf Prf::FromCounts(std::int64_t tp, std::int64_t fp, std::int64_t fn) {
  Prf p;
  p.tp = tp;
  p.fp = fp;
  p.fn = fn;
  p.precision = Ratio(tp, tp + fp);
  p.recall = Ratio(tp, tp + fn);
  double s = p.precision + p.recall;
  p.f1 = s == 0.0 ? 0.0 : 2.0 * p.precision * p.recall / s;
  return p;
}

Prf NerExactPrf(std::span<const SpanAnnotation> pred, std::span<const SpanAnnotation> gold,
                const std::string& concept_id) {
  using Key = std::tuple<SequenceRef, std::size_t, std::size_t>;
  std::vector<Key> p, g;
  for (const SpanAnnotation& a : pred) {
    if (a.concept_id == concept_id) p.emplace_back(a.ref, a.start, a.end);
  }
  for (const SpanAnnotation& a : gold) {
    if (a.concept_id == concept_id) g.emplace_back(a.ref, a.start, a.end);
  }
  const auto np = static_cast<std::int64_t>(p.size());
  const auto ng = static_cast<std::int64_t>(g.size());
  std::int64_t tp = MatchCount(std::move(p), std::move(g));
  return Prf::FromCounts(tp, np - tp, ng - tp);
}

Prf SequencePrf(const LabelMap& pred, const LabelMap& gold, const std::string& concept_id) {
  if (pred.size() != gold.size()) {
    throw KeyMismatch("prediction covers " + std::to_string(pred.size()) +
                      " sequences, gold covers " + std::to_string(gold.size()));
  }
  std::int64_t tp = 0, fp = 0, fn = 0;
  for (auto p = pred.begin(), g = gold.begin(); p != pred.end(); ++p, ++g) {
    if (p->first != g->first) {
      throw KeyMismatch("sequence " + p->first.section_id + "#" +
                        std::to_string(p->first.index) + " is not in the gold set");
    }
    bool pp = p->second.count(concept_id) > 0;
    bool gg = g->second.count(concept_id) > 0;
    tp += pp && gg;
    fp += pp && !gg;
    fn += !pp && gg;
  }
  return Prf::FromCounts(tp, fp, fn);
}

std::vector<NumericObservation> NumericObservations(std::span<const SpanAnnotation> spans,
                                                    const Ontology& ontology) {
  std::vector<NumericObservation> out;
  for (const SpanAnnotation& a : spans) {
    auto kind = ontology.NumericKindOf(a.concept_id);
    if (kind && a.numeric_value) out.push_back({a.ref, *kind, *a.numeric_value});
  }
  return out;
}

std::map<NumericKind, Prf> NumericPrf(std::span<const NumericObservation> pred,
                                      std::span<const NumericObservation> gold) {
  std::map<NumericKind, Prf> out;
  for (NumericKind kind : {NumericKind::kDuration, NumericKind::kSets, NumericKind::kReps}) {
    std::vector<NumericObservation> p, g;
    for (const auto& o : pred) {
      if (o.kind == kind) p.push_back(o);
    }
    for (const auto& o : gold) {
      if (o.kind == kind) g.push_back(o);
    }
    const auto np = static_cast<std::int64_t>(p.size());
    const auto ng = static_cast<std::int64_t>(g.size());
    std::int64_t tp = MatchCount(std::move(p), std::move(g));
    out[kind] = Prf::FromCounts(tp, np - tp, ng - tp);
  }
  return out;
}

std::map<std::string, Support> ConceptSupport(const GoldCorpus& gold, const Ontology& ontology) {
  std::map<std::string, Support> out;
  for (const std::string& id : ontology.BinaryConceptIds()) out[id];
  LabelMap labels = SequenceTargets(gold, ontology);
  for (const auto& [ref, ids] : labels) {
    auto sp = gold.split.find(ref.section_id);
    bool test = sp != gold.split.end() && sp->second == Split::kTest;
    for (const std::string& id : ids) {
      if (test) {
        ++out[id].test;
      } else {
        ++out[id].train;
      }
    }
  }
  return out;
}

std::vector<std::string> ReportableConcepts(const GoldCorpus& gold, const Ontology& ontology,
                                            int min_support) {
  std::map<std::string, Support> support = ConceptSupport(gold, ontology);
  std::vector<std::string> out;
  for (const std::string& id : ontology.BinaryConceptIds()) {
    const Support& s = support[id];
    if (s.train >= min_support && s.test >= min_support) out.push_back(id);
  }
  return out;
}

std::vector<MethodResult> ScoreSpanMethod(const std::string& name,
                                          std::span<const SpanAnnotation> pred,
                                          const GoldCorpus& gold, const Ontology& ontology) {
  GoldCorpus storage;
  const GoldCorpus& test = TestView(gold, storage);
  std::vector<SpanAnnotation> kept;
  for (const SpanAnnotation& a : pred) {
    if (test.FindSequence(a.ref) != nullptr) kept.push_back(a);
  }

  MethodResult ner{name + "-ner", MethodKind::kNer, {}, {}};
  MethodResult seq{name + "-sequence", MethodKind::kSequence, {}, {}};
  LabelMap pred_labels = ProjectSpans(kept, test.sequences, ontology);
  LabelMap gold_labels = SequenceTargets(test, ontology);
  for (const std::string& id : ontology.BinaryConceptIds()) {
    ner.per_concept[id] = NerExactPrf(kept, test.annotations, id);
    seq.per_concept[id] = SequencePrf(pred_labels, gold_labels, id);
  }
  ner.numeric = NumericPrf(NumericObservations(kept, ontology),
                           NumericObservations(test.annotations, ontology));
  return {ner, seq};
}

MethodResult ScoreLabelMethod(const std::string& name, const LabelMap& pred,
                              const GoldCorpus& gold, const Ontology& ontology) {
  GoldCorpus storage;
  const GoldCorpus& test = TestView(gold, storage);
  LabelMap gold_labels = SequenceTargets(test, ontology);
  LabelMap restricted;
  for (const auto& [ref, unused] : gold_labels) {
    auto it = pred.find(ref);
    if (it == pred.end()) {
      throw KeyMismatch("method " + name + " has no prediction for " + ref.section_id + "#" +
                        std::to_string(ref.index));
    }
    restricted.emplace(ref, it->second);
  }
  MethodResult out{name, MethodKind::kSequence, {}, {}};
  for (const std::string& id : ontology.BinaryConceptIds()) {
    out.per_concept[id] = SequencePrf(restricted, gold_labels, id);
  }
  return out;
}

}  // namespace rehab
