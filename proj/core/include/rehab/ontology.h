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

// The clinical ontology: categories of exercise-description concepts, their
// data kinds and the keywords used for enrichment scoring. Every label used
// anywhere else in the pipeline resolves through an Ontology.
//
// File format (single JSON document):
//
//   {"version": "1",
//    "categories": [
//      {"name": "Plane of Motion", "kind": "Enumerated",
//       "enrichment_group": "Plane of Motion",      // null: not scored
//       "keywords": ["flexion", ...],
//       "concepts": [{"id": "plane_flexion", "display_name": "Flexion"}]},
//      {"name": "Number of Reps", "kind": "Integer",
//       "enrichment_group": "Sets and Reps", "numeric": "reps",
//       "keywords": ["reps", ...],
//       "value_concept": {"id": "reps", "display_name": "Number of Reps"},
//       "concepts": []}]}
//
// Integer categories carry no enumerated concepts; the single value concept
// is what span annotations of that category refer to.

#ifndef REHAB_ONTOLOGY_H_
#define REHAB_ONTOLOGY_H_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rehab {

enum class CategoryKind { kEnumerated, kInteger, kBinary };

// Semantics of an Integer category's value.
enum class NumericKind { kDuration, kSets, kReps };

std::string_view CategoryKindName(CategoryKind kind);
std::string_view NumericKindName(NumericKind kind);

struct Concept {
  std::string id;
  std::string display_name;
  std::string category;

  bool operator==(const Concept&) const = default;
};

struct Category {
  std::string name;
  CategoryKind kind = CategoryKind::kEnumerated;
  std::vector<std::string> keywords;
  std::vector<Concept> concepts;
  // Categories sharing a group count once in the enrichment score.
  std::optional<std::string> enrichment_group;
  // Set for Integer categories only.
  std::optional<Concept> value_concept;
  std::optional<NumericKind> numeric;

  bool operator==(const Category&) const = default;
};

class Ontology {
 public:
  static constexpr int kScoringCategoryCount = 9;

  // Parses and validates an ontology document. Throws ParseError for
  // malformed JSON or missing fields, ValidationError for constraint
  // violations.
  static Ontology Parse(std::string_view json_text);
  static Ontology Load(const std::string& path);

  const std::string& version() const { return version_; }
  std::span<const Category> categories() const { return categories_; }

  // Throws NotFound for unknown ids.
  const Concept& Lookup(std::string_view id) const;
  const Concept* Find(std::string_view id) const;
  bool Contains(std::string_view id) const { return Find(id) != nullptr; }

  const Category& CategoryOf(std::string_view concept_id) const;
  // Kind of the concept's value when it belongs to an Integer category.
  std::optional<NumericKind> NumericKindOf(std::string_view concept_id) const;
  // The value concept id of the Integer category with the given semantics.
  const std::string& NumericConceptId(NumericKind kind) const;

  // Ids of every non-Integer concept, in file order. This is the label
  // universe for sequence-level classification.
  std::vector<std::string> BinaryConceptIds() const;
  // Distinct enrichment groups, in first-appearance order.
  std::vector<std::string> EnrichmentGroups() const;

  bool operator==(const Ontology& other) const {
    return version_ == other.version_ && categories_ == other.categories_;
  }

 private:
  void BuildIndex();
  void Validate() const;

  std::string version_;
  std::vector<Category> categories_;
  // concept id -> (category index, concept index or -1 for value concept)
  std::map<std::string, std::pair<int, int>, std::less<>> index_;
};

inline Ontology LoadOntology(const std::string& path) {
  return Ontology::Load(path);
}
inline const Concept& LookupConcept(const Ontology& ontology,
                                    std::string_view id) {
  return ontology.Lookup(id);
}

}  // namespace rehab

#endif  // REHAB_ONTOLOGY_H_
