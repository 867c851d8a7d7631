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

#include "rehab/ontology.h"

#include <algorithm>
#include <set>

#include "json.hpp"
#include "rehab/error.h"
#include "rehab/text.h"

namespace rehab {

using nlohmann::json;

std::string_view CategoryKindName(CategoryKind kind) {
  switch (kind) {
    case CategoryKind::kEnumerated: return "Enumerated";
    case CategoryKind::kInteger: return "Integer";
    case CategoryKind::kBinary: return "Binary";
  }
  return "?";
}

std::string_view NumericKindName(NumericKind kind) {
  switch (kind) {
    case NumericKind::kDuration: return "duration";
    case NumericKind::kSets: return "sets";
    case NumericKind::kReps: return "reps";
  }
  return "?";
}

namespace {

CategoryKind ParseKind(const std::string& s) {
  if (s == "Enumerated") return CategoryKind::kEnumerated;
  if (s == "Integer") return CategoryKind::kInteger;
  if (s == "Binary") return CategoryKind::kBinary;
  throw ParseError("unknown category kind: " + s);
}

NumericKind ParseNumeric(const std::string& s) {
  if (s == "duration") return NumericKind::kDuration;
  if (s == "sets") return NumericKind::kSets;
  if (s == "reps") return NumericKind::kReps;
  throw ParseError("unknown numeric kind: " + s);
}

Concept ParseConcept(const json& j, const std::string& category) {
  Concept c;
  c.id = j.at("id").get<std::string>();
  c.display_name = j.at("display_name").get<std::string>();
  c.category = category;
  return c;
}

}  // namespace

Ontology Ontology::Parse(std::string_view json_text) {
  Ontology out;
  try {
    json doc = json::parse(json_text);
    out.version_ = doc.at("version").get<std::string>();
    for (const json& jc : doc.at("categories")) {
      Category cat;
      cat.name = jc.at("name").get<std::string>();
      cat.kind = ParseKind(jc.at("kind").get<std::string>());
      for (const json& kw : jc.value("keywords", json::array())) {
        cat.keywords.push_back(ToLowerAscii(kw.get<std::string>()));
      }
      for (const json& jconcept : jc.value("concepts", json::array())) {
        cat.concepts.push_back(ParseConcept(jconcept, cat.name));
      }
      if (jc.contains("enrichment_group") && !jc["enrichment_group"].is_null()) {
        cat.enrichment_group = jc["enrichment_group"].get<std::string>();
      }
      if (jc.contains("value_concept")) {
        cat.value_concept = ParseConcept(jc["value_concept"], cat.name);
      }
      if (jc.contains("numeric")) {
        cat.numeric = ParseNumeric(jc["numeric"].get<std::string>());
      }
      out.categories_.push_back(std::move(cat));
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed ontology: ") + e.what());
  }
  out.Validate();
  out.BuildIndex();
  return out;
}

Ontology Ontology::Load(const std::string& path) {
  return Parse(ReadFile(path));
}

void Ontology::Validate() const {
  std::set<std::string> names;
  std::set<std::string> ids;
  std::set<NumericKind> numerics;
  auto claim_id = [&](const Concept& c) {
    if (c.id.empty()) throw ValidationError("empty concept id in " + c.category);
    if (!ids.insert(c.id).second) {
      throw ValidationError("duplicate concept id: " + c.id);
    }
  };
  for (const Category& cat : categories_) {
    if (!names.insert(cat.name).second) {
      throw ValidationError("duplicate category name: " + cat.name);
    }
    if (cat.enrichment_group && cat.keywords.empty()) {
      throw ValidationError("category '" + cat.name +
                            "' is scored for enrichment but has no keywords");
    }
    if (cat.kind == CategoryKind::kInteger) {
      if (!cat.concepts.empty()) {
        throw ValidationError("Integer category '" + cat.name +
                              "' must not list enumerated concepts");
      }
      if (!cat.value_concept || !cat.numeric) {
        throw ValidationError("Integer category '" + cat.name +
                              "' needs value_concept and numeric");
      }
      if (!numerics.insert(*cat.numeric).second) {
        throw ValidationError("numeric kind declared twice: " +
                              std::string(NumericKindName(*cat.numeric)));
      }
      claim_id(*cat.value_concept);
    } else {
      if (cat.value_concept || cat.numeric) {
        throw ValidationError("only Integer categories take a value concept: " +
                              cat.name);
      }
      for (const Concept& c : cat.concepts) claim_id(c);
    }
  }
}

void Ontology::BuildIndex() {
  index_.clear();
  for (int ci = 0; ci < static_cast<int>(categories_.size()); ++ci) {
    const Category& cat = categories_[ci];
    for (int k = 0; k < static_cast<int>(cat.concepts.size()); ++k) {
      index_.emplace(cat.concepts[k].id, std::make_pair(ci, k));
    }
    if (cat.value_concept) index_.emplace(cat.value_concept->id, std::make_pair(ci, -1));
  }
}

const Concept* Ontology::Find(std::string_view id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return nullptr;
  const Category& cat = categories_[it->second.first];
  return it->second.second < 0 ? &*cat.value_concept
                               : &cat.concepts[it->second.second];
}

const Concept& Ontology::Lookup(std::string_view id) const {
  const Concept* c = Find(id);
  if (c == nullptr) throw NotFound("unknown concept id: '" + std::string(id) + "'");
  return *c;
}

const Category& Ontology::CategoryOf(std::string_view concept_id) const {
  auto it = index_.find(concept_id);
  if (it == index_.end()) {
    throw NotFound("unknown concept id: '" + std::string(concept_id) + "'");
  }
  return categories_[it->second.first];
}

std::optional<NumericKind> Ontology::NumericKindOf(
    std::string_view concept_id) const {
  auto it = index_.find(concept_id);
  if (it == index_.end()) return std::nullopt;
  return categories_[it->second.first].numeric;
}

const std::string& Ontology::NumericConceptId(NumericKind kind) const {
  for (const Category& cat : categories_) {
    if (cat.numeric == kind) return cat.value_concept->id;
  }
  throw NotFound("ontology has no " + std::string(NumericKindName(kind)) +
                 " category");
}

std::vector<std::string> Ontology::BinaryConceptIds() const {
  std::vector<std::string> ids;
  for (const Category& cat : categories_) {
    if (cat.kind == CategoryKind::kInteger) continue;
    for (const Concept& c : cat.concepts) ids.push_back(c.id);
  }
  return ids;
}

std::vector<std::string> Ontology::EnrichmentGroups() const {
  std::vector<std::string> groups;
  for (const Category& cat : categories_) {
    if (cat.enrichment_group &&
        std::find(groups.begin(), groups.end(), *cat.enrichment_group) ==
            groups.end()) {
      groups.push_back(*cat.enrichment_group);
    }
  }
  return groups;
}

}  // namespace rehab
