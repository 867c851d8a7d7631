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

#include <gtest/gtest.h>

#include <set>

#include "rehab/error.h"
#include "test_util.h"

namespace rehab {
namespace {

using testing::DefaultOntology;

TEST(OntologyTest, ShippedFileHasNineScoringCategories) {
  const Ontology& o = DefaultOntology();
  EXPECT_EQ(o.EnrichmentGroups().size(), 9u);
  const Category& plane = o.CategoryOf("plane_flexion");
  EXPECT_EQ(plane.name, "Plane of Motion");
  EXPECT_EQ(o.Lookup("plane_flexion").display_name, "Flexion");
}

TEST(OntologyTest, LookupReturnsConceptWithCategory) {
  const Concept& c = DefaultOntology().Lookup("side_left");
  EXPECT_EQ(c.display_name, "Left");
  EXPECT_EQ(c.category, "Side of Body");
}

TEST(OntologyTest, LookupOfEmptyIdIsNotFound) {
  EXPECT_THROW(DefaultOntology().Lookup(""), NotFound);
  EXPECT_THROW(DefaultOntology().Lookup("no_such_concept"), NotFound);
}

TEST(OntologyTest, LookupRoundTripsEveryConcept) {
  const Ontology& o = DefaultOntology();
  for (const Category& cat : o.categories()) {
    for (const Concept& c : cat.concepts) EXPECT_EQ(o.Lookup(c.id), c);
    if (cat.value_concept) EXPECT_EQ(o.Lookup(cat.value_concept->id), *cat.value_concept);
  }
}

TEST(OntologyTest, ConceptIdsAreUniqueAcrossCategories) {
  std::set<std::string> ids;
  for (const Category& cat : DefaultOntology().categories()) {
    for (const Concept& c : cat.concepts) EXPECT_TRUE(ids.insert(c.id).second) << c.id;
  }
}

TEST(OntologyTest, NumericKindsResolve) {
  const Ontology& o = DefaultOntology();
  EXPECT_EQ(o.NumericKindOf("duration"), NumericKind::kDuration);
  EXPECT_EQ(o.NumericKindOf("sets"), NumericKind::kSets);
  EXPECT_EQ(o.NumericKindOf("reps"), NumericKind::kReps);
  EXPECT_EQ(o.NumericKindOf("plane_flexion"), std::nullopt);
  EXPECT_EQ(o.NumericConceptId(NumericKind::kReps), "reps");
}

TEST(OntologyTest, BinaryConceptsExcludeIntegerValues) {
  std::vector<std::string> ids = DefaultOntology().BinaryConceptIds();
  for (const char* v : {"duration", "sets", "reps"}) {
    EXPECT_EQ(std::count(ids.begin(), ids.end(), v), 0) << v;
  }
  EXPECT_EQ(ids.front(), "rom_general");
}

TEST(OntologyTest, DuplicateIdIsRejected) {
  const char* doc = R"({"version": "1", "categories": [
    {"name": "Type of Motion", "kind": "Enumerated", "keywords": ["arom"],
     "concepts": [{"id": "rom_active", "display_name": "Active"},
                  {"id": "rom_active", "display_name": "Active again"}]}]})";
  EXPECT_THROW(Ontology::Parse(doc), ValidationError);
}

TEST(OntologyTest, IntegerCategoryWithConceptsIsRejected) {
  const char* doc = R"({"version": "1", "categories": [
    {"name": "Duration", "kind": "Integer", "numeric": "duration", "keywords": ["sec"],
     "value_concept": {"id": "duration", "display_name": "Duration"},
     "concepts": [{"id": "dur_short", "display_name": "Short"}]}]})";
  EXPECT_THROW(Ontology::Parse(doc), ValidationError);
}

TEST(OntologyTest, MalformedJsonIsParseError) {
  EXPECT_THROW(Ontology::Parse("{\"version\": "), ParseError);
  EXPECT_THROW(Ontology::Parse(R"({"version": "1"})"), ParseError);
}

TEST(OntologyTest, MissingFileIsNotFound) {
  EXPECT_THROW(Ontology::Load("/nonexistent/ontology.json"), NotFound);
}

}  // namespace
}  // namespace rehab
