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


// Seeded synthetic corpus of therapeutic-procedure sections with aligned
// gold spans. Items are assembled from a phrasebook of surface forms; each
// inserted phrase records its spans at insertion time, and noise (typos and
// de-identification placeholders) is applied afterwards with spans shifted,
// shrunk or, when nothing is left of them, dropped and logged.
//
// Phrasebook format (JSON):
//
//   {"numbers": {"S": [1, 4], "R": [5, 30], ...},
//    "items_per_section": [8, 14],
//    "placeholder_slot": "name", "placeholders": ["[PERSONALNAME]"],
//    "templates": [{"name": "standard", "slots": ["name", "motion", ...]}],
//    "slots": {"side": {"probability": 0.45, "options": [
//        {"text": "R", "concepts": ["side_right"], "bound": true},
//        {"text": "LUE", "concepts": ["side_left", "loc_upper_extremity"],
//         "consumes": "location"},
//        {"text": "SL", "concepts": ["side_unilateral"], "follow": ["stance"]},
//        {"text": "rt", "concepts": ["side_right"], "heldout": true}]}}}
//
// An option's first concept is its primary concept. Without explicit
// "spans" every concept covers the whole option text. "bound" options need
// a location right after them; "consumes" suppresses the named slot;
// "follow" words are appended and carry no concept. Held-out options are
// variants the shipped rules do not know; they are used only when
// heldout_rate > 0. Dosage options are lists of "segments" whose text may
// hold {S}, {R}, {D}, {M} and whose "values" give the numeric value per
// concept ("S", "M*60", ...).

#ifndef REHAB_SYNGEN_H_
#define REHAB_SYNGEN_H_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rehab/goldstore.h"
#include "rehab/ingest.h"
#include "rehab/ontology.h"

namespace rehab {

struct PhraseSegment {
  std::string text;
  std::vector<std::string> concepts;
  // concept id -> value expression: a number variable, optionally "*k".
  std::map<std::string, std::string> values;
};

struct PhraseSpan {
  std::string concept_id;
  std::size_t start = 0;
  std::size_t end = 0;
};

struct PhraseOption {
  std::vector<PhraseSegment> segments;
  // Explicit spans relative to the option text; empty means derived from
  // the segments.
  std::vector<PhraseSpan> spans;
  std::vector<std::string> follow;
  bool bound = false;
  std::string consumes;
  bool heldout = false;
  double weight = 1.0;

  const std::string& primary() const;
  std::vector<std::string> AllConcepts() const;
};

struct PhraseSlot {
  std::string name;
  double probability = 0.0;
  double join_probability = 0.0;
  std::string join_text = "/";
  // Separator placed before this slot's phrase; defaults to one space.
  std::string prefix = " ";
  std::vector<PhraseOption> options;
};

struct ItemTemplate {
  std::string name;
  std::vector<std::string> slots;
};

struct Phrasebook {
  std::map<std::string, std::pair<int, int>> numbers;
  std::pair<int, int> items_per_section{8, 14};
  std::string placeholder_slot;
  std::vector<std::string> placeholders;
  std::vector<ItemTemplate> templates;
  std::map<std::string, PhraseSlot> slots;

  // Throws ConfigError.
  static Phrasebook Parse(std::string_view json_text);
  static Phrasebook Load(const std::string& path);

  // Concepts reachable through non-held-out options, sorted.
  std::vector<std::string> Concepts() const;
  // Throws ConfigError for concepts missing from the ontology and for
  // templates naming unknown slots.
  void Validate(const Ontology& ontology) const;
};

struct NoiseConfig {
  // Per letter-run probability of a typo: a dropped final letter or an
  // abbreviation to the first letter.
  double typo_rate = 0.0;
  // Per name-slot probability of a placeholder in place of the name.
  double placeholder_rate = 0.0;
};

struct GeneratorConfig {
  std::uint64_t seed = 42;
  int n_sections = 300;
  Phrasebook phrasebook;
  NoiseConfig noise;
  // Probability of swapping a chosen option for a held-out variant of the
  // same concept, when one exists.
  double heldout_rate = 0.0;
  // concept id -> minimum number of items forced to mention it.
  std::map<std::string, int> min_positives;
};

struct ItemTrace {
  SequenceRef ref;
  std::string template_name;
};

struct DroppedSpan {
  SequenceRef ref;
  std::string concept_id;
  std::string reason;
};

struct SyntheticCorpus {
  // Sections, sequences and annotations; no split assigned.
  GoldCorpus gold;
  std::vector<ItemTrace> trace;
  std::vector<DroppedSpan> dropped;
  int name_slots = 0;
  int placeholder_substitutions = 0;
  int typos = 0;
};

// Deterministic for a fixed config. The first half of the sections is
// marked enriched, the rest random. Section ids look like
// "SYN_THERAPY_0001". Throws ConfigError for invalid configs.
SyntheticCorpus GenerateCorpus(const GeneratorConfig& config, const Ontology& ontology);

// Split into train and test with round(stratum * 125 / 150) training
// sections per origin stratum.
GoldCorpus DefaultSplit(const GoldCorpus& gold, std::uint64_t seed);

// Full note files around each section plus non-therapy distractor notes,
// for exercising the ingest path.
std::vector<NoteFile> RenderNotes(const SyntheticCorpus& corpus, std::uint64_t seed);

}  // namespace rehab

#endif  // REHAB_SYNGEN_H_
