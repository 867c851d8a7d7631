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

// Note ingestion: filename filtering, therapeutic-procedures section
// carving, enumerated-item segmentation, enrichment scoring and candidate
// set selection.

#ifndef REHAB_INGEST_H_
#define REHAB_INGEST_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rehab/ontology.h"

namespace rehab {

struct NoteFile {
  std::string filename;
  std::string text;
};

struct Section {
  std::string doc_id;
  std::string text;
  std::string source_filename;
  int placeholder_count = 0;

  bool operator==(const Section&) const = default;
};

// One enumerated exercise item. start/end are byte offsets into the
// section text and text == section.text.substr(start, end - start).
struct Sequence {
  std::string section_id;
  int index = 0;
  std::string label_number;
  std::string text;
  std::size_t start = 0;
  std::size_t end = 0;

  bool operator==(const Sequence&) const = default;
};

// Keeps files whose name contains `marker`. Matching is case-sensitive
// unless ignore_case is set.
std::vector<NoteFile> FilterNoteFiles(std::vector<NoteFile> files,
                                      bool ignore_case = false,
                                      std::string_view marker = "THERAPY");

// Reads every regular file in a directory, sorted by filename.
std::vector<NoteFile> ReadNoteDirectory(const std::string& dir);

// Header grammar for section carving. Header patterns are matched at the
// start of a line; the section ends at the next line matching the
// terminator pattern or at end of note.
struct SectionGrammar {
  std::vector<std::string> header_patterns;
  std::string terminator_pattern;

  static SectionGrammar Default();
};

// Returns the therapeutic-procedures section, trimmed of surrounding
// whitespace, or nullopt when no header matches. The section id is the
// filename without its extension.
std::optional<Section> ExtractTherapySection(
    const NoteFile& note, const SectionGrammar& grammar = SectionGrammar::Default());

// Counts bracketed de-identification tokens such as "[PERSONALNAME]".
int CountPlaceholders(std::string_view text);

// One Sequence per line-initial enumerator ("7:", "7.", "7)") whose item
// body is non-empty after trimming. Bodies run to the next enumerator line.
std::vector<Sequence> SegmentSequences(const Section& section);

// Number of enrichment groups with at least one keyword in the text.
// Throws ConfigError unless the ontology defines exactly nine groups.
int EnrichmentScore(std::string_view text, const Ontology& ontology);
inline int EnrichmentScore(const Section& section, const Ontology& ontology) {
  return EnrichmentScore(section.text, ontology);
}

struct SelectionOptions {
  int n_enriched = 300;
  int n_random = 300;
  // Minimum length, in characters, for the random set.
  int min_len = 200;
  std::uint64_t seed = 0;
};

struct CandidateSets {
  std::vector<Section> enriched;
  std::vector<Section> random;
};

// Enriched: every score-9 section plus a seeded draw of score-8 sections up
// to n_enriched (a seeded draw of score-9 sections if those alone exceed
// it). Random: a seeded draw of n_random sections of length >= min_len
// disjoint from the enriched set. Throws InsufficientSections when a pool
// is too small.
CandidateSets SelectCandidateSets(std::span<const Section> sections,
                                  const Ontology& ontology,
                                  const SelectionOptions& options);

}  // namespace rehab

#endif  // REHAB_INGEST_H_
