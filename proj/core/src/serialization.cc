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


#include "rehab/serialization.h"

#include <istream>
#include <ostream>

#include "json.hpp"
#include "rehab/error.h"
#include "rehab/text.h"

namespace rehab {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

// Calls fn(record, lineno) for every non-blank line, wrapping JSON errors.
template <typename Fn>
void ForEachRecord(std::istream& in, const char* what, Fn fn) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (TrimView(line).empty()) continue;
    try {
      fn(json::parse(line), lineno);
    } catch (const json::exception& e) {
      throw ParseError(std::string(what) + " line " + std::to_string(lineno) +
                       ": " + e.what());
    }
  }
}

}  // namespace

void WriteSections(std::ostream& out, std::span<const Section> sections,
                   const std::map<std::string, Origin>* origins) {
  for (const Section& s : sections) {
    ordered_json j;
    j["id"] = s.doc_id;
    j["text"] = s.text;
    j["source_filename"] = s.source_filename;
    j["placeholder_count"] = s.placeholder_count;
    if (origins != nullptr) {
      if (auto it = origins->find(s.doc_id); it != origins->end()) {
        j["origin"] = std::string(OriginName(it->second));
      }
    }
    out << j.dump() << '\n';
  }
}

std::vector<Section> ReadSections(std::istream& in) {
  std::vector<Section> out;
  ForEachRecord(in, "sections", [&out](const json& j, int) {
    Section s;
    s.doc_id = j.at("id").get<std::string>();
    s.text = j.at("text").get<std::string>();
    s.source_filename = j.value("source_filename", s.doc_id);
    s.placeholder_count = j.value("placeholder_count", CountPlaceholders(s.text));
    out.push_back(std::move(s));
  });
  return out;
}

void WriteSequences(std::ostream& out, std::span<const Sequence> sequences,
                    std::span<const Section> sections) {
  std::map<std::string, const Section*> by_id;
  for (const Section& s : sections) by_id[s.doc_id] = &s;
  for (const Sequence& q : sequences) {
    auto it = by_id.find(q.section_id);
    if (it == by_id.end()) throw NotFound("sequence of unknown section " + q.section_id);
    const std::string& text = it->second->text;
    ordered_json j;
    j["section_id"] = q.section_id;
    j["index"] = q.index;
    j["label_number"] = q.label_number;
    j["text"] = q.text;
    j["start"] = ByteToChar(text, q.start);
    j["end"] = ByteToChar(text, q.end);
    out << j.dump() << '\n';
  }
}

std::vector<Sequence> ReadSequencesOrGold(std::istream& in) {
  std::vector<Sequence> out;
  ForEachRecord(in, "sequences", [&out](const json& j, int lineno) {
    if (j.contains("section") && j.contains("sequences")) {
      const json& js = j["section"];
      const std::string id = js.at("id").get<std::string>();
      const std::string text = js.at("text").get<std::string>();
      for (const json& jq : j["sequences"]) {
        Sequence q;
        q.section_id = id;
        q.index = jq.at("index").get<int>();
        q.label_number = jq.value("label_number", std::to_string(q.index + 1));
        q.start = CharToByte(text, jq.at("start").get<std::size_t>());
        q.end = CharToByte(text, jq.at("end").get<std::size_t>());
        if (q.end < q.start) {
          throw ValidationError("gold line " + std::to_string(lineno) +
                                ": sequence end before start");
        }
        q.text = text.substr(q.start, q.end - q.start);
        out.push_back(std::move(q));
      }
      return;
    }
    Sequence q;
    q.section_id = j.at("section_id").get<std::string>();
    q.index = j.at("index").get<int>();
    q.label_number = j.value("label_number", std::to_string(q.index + 1));
    q.text = j.at("text").get<std::string>();
    // Offsets are kept only for reference; the text is authoritative.
    q.start = j.value("start", std::size_t{0});
    q.end = j.value("end", q.start + Utf8Length(q.text));
    out.push_back(std::move(q));
  });
  return out;
}

void WriteSpans(std::ostream& out, const std::string& method,
                std::span<const SpanAnnotation> spans,
                std::span<const Sequence> sequences) {
  std::map<SequenceRef, const Sequence*> by_ref;
  for (const Sequence& q : sequences) by_ref[RefOf(q)] = &q;
  for (const SpanAnnotation& a : spans) {
    auto it = by_ref.find(a.ref);
    if (it == by_ref.end()) {
      throw NotFound("span of unknown sequence " + a.ref.section_id + "#" +
                     std::to_string(a.ref.index));
    }
    const std::string& text = it->second->text;
    ordered_json j;
    j["method"] = method;
    j["section_id"] = a.ref.section_id;
    j["seq_index"] = a.ref.index;
    j["concept_id"] = a.concept_id;
    j["start"] = ByteToChar(text, a.start);
    j["end"] = ByteToChar(text, a.end);
    if (a.numeric_value) j["numeric_value"] = *a.numeric_value;
    out << j.dump() << '\n';
  }
}

void WriteLabels(std::ostream& out, const std::string& method,
                 const LabelMap& labels) {
  for (const auto& [ref, ids] : labels) {
    ordered_json j;
    j["method"] = method;
    j["section_id"] = ref.section_id;
    j["seq_index"] = ref.index;
    j["labels"] = std::vector<std::string>(ids.begin(), ids.end());
    out << j.dump() << '\n';
  }
}

PredictionFile ReadPredictions(std::istream& in, const GoldCorpus& corpus) {
  PredictionFile file;
  ForEachRecord(in, "predictions", [&](const json& j, int lineno) {
    std::string where = "predictions line " + std::to_string(lineno) + ": ";
    std::string method = j.at("method").get<std::string>();
    if (file.method.empty()) {
      file.method = method;
    } else if (file.method != method) {
      throw ValidationError(where + "mixed methods '" + file.method + "' and '" +
                            method + "'");
    }
    SequenceRef ref{j.at("section_id").get<std::string>(), j.at("seq_index").get<int>()};
    if (j.contains("labels")) {
      if (file.spans) throw ValidationError(where + "mixed spans and labels");
      if (!file.labels) file.labels.emplace();
      auto& set = (*file.labels)[ref];
      for (const json& id : j["labels"]) set.insert(id.get<std::string>());
      return;
    }
    if (file.labels) throw ValidationError(where + "mixed spans and labels");
    if (!file.spans) file.spans.emplace();
    const Sequence* q = corpus.FindSequence(ref);
    if (q == nullptr) {
      throw ValidationError(where + "unknown sequence " + ref.section_id + "#" +
                            std::to_string(ref.index));
    }
    SpanAnnotation a;
    a.ref = ref;
    a.concept_id = j.at("concept_id").get<std::string>();
    a.start = CharToByte(q->text, j.at("start").get<std::size_t>());
    a.end = CharToByte(q->text, j.at("end").get<std::size_t>());
    if (j.contains("numeric_value") && !j["numeric_value"].is_null()) {
      a.numeric_value = j["numeric_value"].get<std::int64_t>();
    }
    file.spans->push_back(std::move(a));
  });
  if (file.method.empty()) throw ValidationError("prediction file is empty");
  return file;
}

}  // namespace rehab
