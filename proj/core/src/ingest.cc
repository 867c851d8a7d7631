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

#include "rehab/ingest.h"

#include <algorithm>
#include <filesystem>
#include <set>

#include <boost/regex.hpp>

#include "rehab/error.h"
#include "rehab/text.h"

namespace rehab {
namespace fs = std::filesystem;

std::vector<NoteFile> FilterNoteFiles(std::vector<NoteFile> files,
                                      bool ignore_case,
                                      std::string_view marker) {
  std::string needle = ignore_case ? ToLowerAscii(marker) : std::string(marker);
  std::vector<NoteFile> kept;
  for (NoteFile& f : files) {
    std::string name = ignore_case ? ToLowerAscii(f.filename) : f.filename;
    if (name.find(needle) != std::string::npos) kept.push_back(std::move(f));
  }
  return kept;
}

std::vector<NoteFile> ReadNoteDirectory(const std::string& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw NotFound("not a directory: " + dir);
  std::vector<NoteFile> notes;
  for (const fs::directory_entry& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    notes.push_back({entry.path().filename().string(),
                     ReadFile(entry.path().string())});
  }
  std::sort(notes.begin(), notes.end(),
            [](const NoteFile& a, const NoteFile& b) {
              return a.filename < b.filename;
            });
  return notes;
}

SectionGrammar SectionGrammar::Default() {
  SectionGrammar g;
  g.header_patterns = {
      R"(^[ \t]*(?i:therapeutic[ \t]+procedures?)[ \t]*[:.\-]*[ \t]*)"};
  // Next ALL-CAPS heading followed by a colon, e.g. "ASSESSMENT:".
  g.terminator_pattern = R"(^[ \t]*[A-Z][A-Z0-9 /&()\-]{2,}:)";
  return g;
}

int CountPlaceholders(std::string_view text) {
  static const boost::regex kPlaceholder(R"(\[[A-Z][A-Z_\-]*\])");
  boost::cregex_iterator it(text.data(), text.data() + text.size(), kPlaceholder);
  return static_cast<int>(std::distance(it, boost::cregex_iterator()));
}

std::optional<Section> ExtractTherapySection(const NoteFile& note,
                                             const SectionGrammar& grammar) {
  const char* begin = note.text.data();
  const char* end = begin + note.text.size();
  boost::cmatch header;
  bool found = false;
  for (const std::string& pattern : grammar.header_patterns) {
    if (boost::regex_search(begin, end, header, boost::regex(pattern))) {
      found = true;
      break;
    }
  }
  if (!found) return std::nullopt;

  std::size_t body_start = header[0].second - begin;
  std::size_t body_end = note.text.size();
  boost::cmatch term;
  if (boost::regex_search(begin + body_start, end, term,
                          boost::regex(grammar.terminator_pattern),
                          boost::match_prev_avail)) {
    body_end = term[0].first - begin;
  }
  std::string_view body(note.text.data() + body_start, body_end - body_start);
  std::string_view trimmed = TrimView(body);

  Section s;
  s.doc_id = fs::path(note.filename).stem().string();
  s.source_filename = note.filename;
  s.text = std::string(trimmed);
  s.placeholder_count = CountPlaceholders(s.text);
  return s;
}

namespace {

struct Enumerator {
  std::size_t line_start;
  std::size_t body_start;
  std::string label;
};

// Parses "  12:" / "12." / "12)" at a line start.
std::optional<Enumerator> ParseEnumerator(std::string_view text,
                                          std::size_t line_start) {
  std::size_t i = line_start;
  while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
  std::size_t digits = i;
  while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
  if (i == digits || i >= text.size()) return std::nullopt;
  char sep = text[i];
  if (sep != ':' && sep != '.' && sep != ')') return std::nullopt;
  // "1.5 lbs" is a decimal, not an enumerator.
  if (sep == '.' && i + 1 < text.size() && text[i + 1] >= '0' &&
      text[i + 1] <= '9') {
    return std::nullopt;
  }
  return Enumerator{line_start, i + 1,
                    std::string(text.substr(digits, i - digits))};
}

}  // namespace

std::vector<Sequence> SegmentSequences(const Section& section) {
  std::string_view text = section.text;
  std::vector<Enumerator> marks;
  for (std::size_t line = 0; line <= text.size();) {
    if (auto e = ParseEnumerator(text, line)) marks.push_back(*e);
    std::size_t nl = text.find('\n', line);
    if (nl == std::string_view::npos) break;
    line = nl + 1;
  }

  std::vector<Sequence> out;
  for (std::size_t m = 0; m < marks.size(); ++m) {
    std::size_t limit = m + 1 < marks.size() ? marks[m + 1].line_start : text.size();
    std::string_view body = text.substr(marks[m].body_start, limit - marks[m].body_start);
    std::string_view trimmed = TrimView(body);
    if (trimmed.empty()) continue;
    Sequence seq;
    seq.section_id = section.doc_id;
    seq.index = static_cast<int>(out.size());
    seq.label_number = marks[m].label;
    seq.start = static_cast<std::size_t>(trimmed.data() - text.data());
    seq.end = seq.start + trimmed.size();
    seq.text = std::string(trimmed);
    out.push_back(std::move(seq));
  }
  return out;
}

int EnrichmentScore(std::string_view text, const Ontology& ontology) {
  std::vector<std::string> groups = ontology.EnrichmentGroups();
  if (static_cast<int>(groups.size()) != Ontology::kScoringCategoryCount) {
    throw ConfigError("enrichment scoring needs exactly 9 scoring categories, got " +
                      std::to_string(groups.size()));
  }
  std::string lowered = ToLowerAscii(text);
  std::set<std::string> hit;
  for (const Category& cat : ontology.categories()) {
    if (!cat.enrichment_group || hit.count(*cat.enrichment_group)) continue;
    for (const std::string& kw : cat.keywords) {
      if (ContainsKeyword(lowered, kw)) {
        hit.insert(*cat.enrichment_group);
        break;
      }
    }
  }
  return static_cast<int>(hit.size());
}

CandidateSets SelectCandidateSets(std::span<const Section> sections,
                                  const Ontology& ontology,
                                  const SelectionOptions& options) {
  std::vector<const Section*> sorted;
  for (const Section& s : sections) sorted.push_back(&s);
  std::sort(sorted.begin(), sorted.end(), [](const Section* a, const Section* b) {
    return a->doc_id < b->doc_id;
  });

  std::vector<const Section*> nines;
  std::vector<const Section*> eights;
  for (const Section* s : sorted) {
    int score = EnrichmentScore(*s, ontology);
    if (score == 9) nines.push_back(s);
    if (score == 8) eights.push_back(s);
  }

  Rng rng(options.seed);
  auto n_enriched = static_cast<std::size_t>(options.n_enriched);
  std::vector<const Section*> enriched;
  if (nines.size() >= n_enriched) {
    rng.Shuffle(nines);
    enriched.assign(nines.begin(), nines.begin() + n_enriched);
  } else {
    std::size_t need = n_enriched - nines.size();
    if (eights.size() < need) {
      throw InsufficientSections(
          "enriched pool too small: " + std::to_string(nines.size()) +
          " score-9 and " + std::to_string(eights.size()) +
          " score-8 sections for " + std::to_string(n_enriched) + " requested");
    }
    enriched = nines;
    rng.Shuffle(eights);
    enriched.insert(enriched.end(), eights.begin(), eights.begin() + need);
  }

  std::set<std::string> taken;
  for (const Section* s : enriched) taken.insert(s->doc_id);
  std::vector<const Section*> pool;
  for (const Section* s : sorted) {
    if (taken.count(s->doc_id)) continue;
    if (Utf8Length(s->text) < static_cast<std::size_t>(options.min_len)) continue;
    pool.push_back(s);
  }
  auto n_random = static_cast<std::size_t>(options.n_random);
  if (pool.size() < n_random) {
    throw InsufficientSections("random pool too small: " +
                               std::to_string(pool.size()) + " eligible for " +
                               std::to_string(n_random) + " requested");
  }
  rng.Shuffle(pool);

  CandidateSets out;
  for (const Section* s : enriched) out.enriched.push_back(*s);
  for (std::size_t i = 0; i < n_random; ++i) out.random.push_back(*pool[i]);
  return out;
}

}  // namespace rehab
