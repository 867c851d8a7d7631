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

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>

#include "json.hpp"
#include "rehab/error.h"
#include "rehab/ruletagger.h"
#include "rehab/text.h"

namespace rehab {

using nlohmann::json;
using nlohmann::ordered_json;

std::string_view OriginName(Origin origin) {
  return origin == Origin::kEnriched ? "enriched" : "random";
}

std::string_view SplitName(Split split) {
  return split == Split::kTrain ? "train" : "test";
}

namespace {

Origin ParseOrigin(const std::string& s) {
  if (s == "enriched") return Origin::kEnriched;
  if (s == "random") return Origin::kRandom;
  throw ValidationError("unknown origin: " + s);
}

Split ParseSplit(const std::string& s) {
  if (s == "train") return Split::kTrain;
  if (s == "test") return Split::kTest;
  throw ValidationError("unknown split: " + s);
}

std::string Describe(const SpanAnnotation& a) {
  return a.ref.section_id + "#" + std::to_string(a.ref.index) + " " +
         a.concept_id + " [" + std::to_string(a.start) + "," +
         std::to_string(a.end) + ")";
}

}  // namespace

void GoldCorpus::Reindex() {
  sequence_index_.clear();
  for (std::size_t i = 0; i < sequences.size(); ++i) {
    sequence_index_.emplace(RefOf(sequences[i]), i);
  }
}

const Sequence* GoldCorpus::FindSequence(const SequenceRef& ref) const {
  auto it = sequence_index_.find(ref);
  return it == sequence_index_.end() ? nullptr : &sequences[it->second];
}

const Sequence& GoldCorpus::GetSequence(const SequenceRef& ref) const {
  const Sequence* s = FindSequence(ref);
  if (s == nullptr) {
    throw NotFound("unknown sequence " + ref.section_id + "#" +
                   std::to_string(ref.index));
  }
  return *s;
}

std::vector<Sequence> GoldCorpus::SequencesIn(Split which) const {
  std::vector<Sequence> out;
  for (const Sequence& s : sequences) {
    auto it = split.find(s.section_id);
    if (it != split.end() && it->second == which) out.push_back(s);
  }
  return out;
}

std::vector<SpanAnnotation> GoldCorpus::AnnotationsIn(Split which) const {
  std::vector<SpanAnnotation> out;
  for (const SpanAnnotation& a : annotations) {
    auto it = split.find(a.ref.section_id);
    if (it != split.end() && it->second == which) out.push_back(a);
  }
  return out;
}

GoldCorpus GoldCorpus::Subset(Split which) const {
  GoldCorpus out;
  for (const Section& s : sections) {
    auto it = split.find(s.doc_id);
    if (it == split.end() || it->second != which) continue;
    out.sections.push_back(s);
    out.split[s.doc_id] = which;
    if (auto o = origin.find(s.doc_id); o != origin.end()) {
      out.origin[s.doc_id] = o->second;
    }
  }
  out.sequences = SequencesIn(which);
  out.annotations = AnnotationsIn(which);
  out.Reindex();
  return out;
}

void ValidateCorpus(const GoldCorpus& corpus, const Ontology& ontology) {
  std::map<std::string, const Section*> sections;
  for (const Section& s : corpus.sections) {
    if (s.doc_id.empty()) throw ValidationError("section with empty id");
    if (!sections.emplace(s.doc_id, &s).second) {
      throw ValidationError("duplicate section id: " + s.doc_id);
    }
    if (!corpus.origin.count(s.doc_id)) {
      throw ValidationError("section " + s.doc_id + " has no origin");
    }
  }
  if (corpus.HasSplit()) {
    for (const Section& s : corpus.sections) {
      if (!corpus.split.count(s.doc_id)) {
        throw ValidationError("split does not cover section " + s.doc_id);
      }
    }
  }

  std::map<SequenceRef, const Sequence*> seqs;
  std::map<std::string, std::size_t> last_end;
  for (const Sequence& q : corpus.sequences) {
    auto it = sections.find(q.section_id);
    std::string where = q.section_id + "#" + std::to_string(q.index);
    if (it == sections.end()) {
      throw ValidationError("sequence " + where + " references unknown section");
    }
    const std::string& text = it->second->text;
    if (!(q.start < q.end && q.end <= text.size())) {
      throw ValidationError("sequence " + where + " has bad offsets");
    }
    if (text.compare(q.start, q.end - q.start, q.text) != 0) {
      throw ValidationError("sequence " + where + " text is not the section slice");
    }
    auto prev = last_end.find(q.section_id);
    if (prev != last_end.end() && q.start < prev->second) {
      throw ValidationError("sequence " + where + " overlaps or is out of order");
    }
    last_end[q.section_id] = q.end;
    if (!seqs.emplace(RefOf(q), &q).second) {
      throw ValidationError("duplicate sequence " + where);
    }
  }

  for (const SpanAnnotation& a : corpus.annotations) {
    auto it = seqs.find(a.ref);
    if (it == seqs.end()) {
      throw ValidationError("annotation " + Describe(a) + " references unknown sequence");
    }
    if (!ontology.Contains(a.concept_id)) {
      throw ValidationError("annotation " + Describe(a) + " has unknown concept");
    }
    if (!(a.start < a.end && a.end <= it->second->text.size())) {
      throw ValidationError("annotation " + Describe(a) + " is out of bounds");
    }
    bool numeric = ontology.NumericKindOf(a.concept_id).has_value();
    if (numeric != a.numeric_value.has_value()) {
      throw ValidationError("annotation " + Describe(a) +
                            (numeric ? " needs a numeric_value"
                                     : " has a numeric_value on a non-Integer concept"));
    }
    if (a.numeric_value && *a.numeric_value < 0) {
      throw ValidationError("annotation " + Describe(a) + " has a negative value");
    }
  }
}

GoldCorpus ReadGold(std::istream& in, const Ontology& ontology) {
  GoldCorpus corpus;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (TrimView(line).empty()) continue;
    std::string where = "gold line " + std::to_string(lineno) + ": ";
    try {
      json rec = json::parse(line);
      const json& js = rec.at("section");
      Section section;
      section.doc_id = js.at("id").get<std::string>();
      section.text = js.at("text").get<std::string>();
      section.source_filename = js.value("source_filename", section.doc_id);
      section.placeholder_count = CountPlaceholders(section.text);
      corpus.origin[section.doc_id] =
          ParseOrigin(js.value("origin", std::string("random")));
      if (rec.contains("split") && !rec["split"].is_null()) {
        corpus.split[section.doc_id] = ParseSplit(rec["split"].get<std::string>());
      }
      std::map<int, std::size_t> local;
      for (const json& jq : rec.value("sequences", json::array())) {
        Sequence q;
        q.section_id = section.doc_id;
        q.index = jq.at("index").get<int>();
        q.label_number = jq.value("label_number", std::to_string(q.index + 1));
        q.start = CharToByte(section.text, jq.at("start").get<std::size_t>());
        q.end = CharToByte(section.text, jq.at("end").get<std::size_t>());
        if (q.end < q.start) throw ValidationError("sequence end before start");
        q.text = section.text.substr(q.start, q.end - q.start);
        local[q.index] = corpus.sequences.size();
        corpus.sequences.push_back(std::move(q));
      }
      for (const json& ja : rec.value("annotations", json::array())) {
        SpanAnnotation a;
        a.ref = {section.doc_id, ja.at("seq_index").get<int>()};
        a.concept_id = ja.at("concept_id").get<std::string>();
        auto seq = local.find(a.ref.index);
        if (seq == local.end()) {
          throw ValidationError("annotation references unknown sequence index " +
                                std::to_string(a.ref.index));
        }
        const std::string& seq_text = corpus.sequences[seq->second].text;
        a.start = CharToByte(seq_text, ja.at("start").get<std::size_t>());
        a.end = CharToByte(seq_text, ja.at("end").get<std::size_t>());
        if (ja.contains("numeric_value") && !ja["numeric_value"].is_null()) {
          a.numeric_value = ja["numeric_value"].get<std::int64_t>();
        } else if (auto kind = ontology.NumericKindOf(a.concept_id);
                   kind && a.start < a.end && a.end <= seq_text.size()) {
          // Integer spans without a value are normalized from their text.
          try {
            a.numeric_value =
                NormalizeNumeric(std::string_view(seq_text).substr(a.start, a.end - a.start),
                                 *kind).value;
          } catch (const NoNumber& e) {
            throw ValidationError(e.what());
          }
        }
        corpus.annotations.push_back(std::move(a));
      }
      corpus.sections.push_back(std::move(section));
    } catch (const json::exception& e) {
      throw ParseError(where + e.what());
    } catch (const ValidationError& e) {
      throw ValidationError(where + e.what());
    }
  }
  corpus.Reindex();
  ValidateCorpus(corpus, ontology);
  return corpus;
}

GoldCorpus ValidateGold(const std::string& path, const Ontology& ontology) {
  std::ifstream in(path);
  if (!in) throw NotFound("cannot open gold file: " + path);
  return ReadGold(in, ontology);
}

void WriteGold(std::ostream& out, const GoldCorpus& corpus) {
  std::map<std::string, std::vector<const Sequence*>> seqs;
  for (const Sequence& q : corpus.sequences) seqs[q.section_id].push_back(&q);
  std::map<std::string, std::vector<const SpanAnnotation*>> anns;
  for (const SpanAnnotation& a : corpus.annotations) {
    anns[a.ref.section_id].push_back(&a);
  }
  for (const Section& s : corpus.sections) {
    ordered_json rec;
    ordered_json js;
    js["id"] = s.doc_id;
    js["text"] = s.text;
    auto o = corpus.origin.find(s.doc_id);
    js["origin"] = std::string(OriginName(o == corpus.origin.end() ? Origin::kRandom : o->second));
    if (s.source_filename != s.doc_id) js["source_filename"] = s.source_filename;
    rec["section"] = js;
    ordered_json jseqs = ordered_json::array();
    std::map<int, const Sequence*> by_index;
    for (const Sequence* q : seqs[s.doc_id]) {
      by_index[q->index] = q;
      ordered_json jq;
      jq["index"] = q->index;
      jq["label_number"] = q->label_number;
      jq["start"] = ByteToChar(s.text, q->start);
      jq["end"] = ByteToChar(s.text, q->end);
      jseqs.push_back(jq);
    }
    rec["sequences"] = jseqs;
    ordered_json janns = ordered_json::array();
    for (const SpanAnnotation* a : anns[s.doc_id]) {
      const Sequence* q = by_index.at(a->ref.index);
      ordered_json ja;
      ja["seq_index"] = a->ref.index;
      ja["concept_id"] = a->concept_id;
      ja["start"] = ByteToChar(q->text, a->start);
      ja["end"] = ByteToChar(q->text, a->end);
      if (a->numeric_value) ja["numeric_value"] = *a->numeric_value;
      janns.push_back(ja);
    }
    rec["annotations"] = janns;
    if (auto sp = corpus.split.find(s.doc_id); sp != corpus.split.end()) {
      rec["split"] = std::string(SplitName(sp->second));
    }
    out << rec.dump() << '\n';
  }
}

GoldCorpus SplitTrainTest(GoldCorpus corpus, int per_origin_train,
                          std::uint64_t seed) {
  if (per_origin_train < 0) throw ConfigError("per_origin_train must be >= 0");
  Rng rng(seed);
  corpus.split.clear();
  for (Origin stratum : {Origin::kEnriched, Origin::kRandom}) {
    std::vector<std::string> ids;
    for (const Section& s : corpus.sections) {
      auto it = corpus.origin.find(s.doc_id);
      if (it != corpus.origin.end() && it->second == stratum) ids.push_back(s.doc_id);
    }
    if (ids.empty()) continue;
    if (static_cast<int>(ids.size()) < per_origin_train) {
      throw InsufficientSections(
          std::string(OriginName(stratum)) + " stratum has " +
          std::to_string(ids.size()) + " sections, " +
          std::to_string(per_origin_train) + " needed for training");
    }
    std::sort(ids.begin(), ids.end());
    rng.Shuffle(ids);
    for (std::size_t i = 0; i < ids.size(); ++i) {
      corpus.split[ids[i]] =
          static_cast<int>(i) < per_origin_train ? Split::kTrain : Split::kTest;
    }
  }
  for (const Section& s : corpus.sections) {
    if (!corpus.split.count(s.doc_id)) corpus.split[s.doc_id] = Split::kTest;
  }
  return corpus;
}

LabelMap ProjectSpans(std::span<const SpanAnnotation> spans,
                      std::span<const Sequence> sequences,
                      const Ontology& ontology) {
  LabelMap labels;
  for (const Sequence& q : sequences) labels[RefOf(q)];
  for (const SpanAnnotation& a : spans) {
    if (!ontology.Contains(a.concept_id)) {
      throw UnknownConcept("span with unknown concept: " + a.concept_id);
    }
    if (ontology.NumericKindOf(a.concept_id)) continue;
    auto it = labels.find(a.ref);
    if (it == labels.end()) continue;
    it->second.insert(a.concept_id);
  }
  return labels;
}

LabelMap SequenceTargets(const GoldCorpus& corpus, const Ontology& ontology) {
  return ProjectSpans(corpus.annotations, corpus.sequences, ontology);
}

LabelMap SequenceTargets(const GoldCorpus& corpus, const Ontology& ontology,
                         Split which) {
  std::vector<Sequence> seqs = corpus.SequencesIn(which);
  std::vector<SpanAnnotation> spans = corpus.AnnotationsIn(which);
  return ProjectSpans(spans, seqs, ontology);
}

}  // namespace rehab
