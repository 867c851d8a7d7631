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

#include "rehab/ruletagger.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <tuple>

#include "json.hpp"
#include "rehab/error.h"
#include "rehab/text.h"

namespace rehab {

using nlohmann::json;

std::vector<Rule> ParseRules(std::istream& in) {
  std::vector<Rule> rules;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view trimmed = TrimView(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    try {
      json j = json::parse(trimmed);
      Rule r;
      r.concept_id = j.at("concept_id").get<std::string>();
      r.pattern = j.at("pattern").get<std::string>();
      r.priority = j.value("priority", 0);
      r.case_sensitive = j.value("case_sensitive", false);
      r.line = lineno;
      if (j.contains("context")) {
        const json& c = j["context"];
        auto opt = [&c](const char* key) -> std::optional<std::string> {
          if (!c.contains(key) || c[key].is_null()) return std::nullopt;
          return c[key].get<std::string>();
        };
        r.context.require_following = opt("require_following");
        r.context.require_preceding = opt("require_preceding");
        r.context.forbid_following = opt("forbid_following");
        r.context.forbid_preceding = opt("forbid_preceding");
        r.context.window = c.value("window", r.context.window);
      }
      rules.push_back(std::move(r));
    } catch (const json::exception& e) {
      throw ParseError("rules line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return rules;
}

namespace {

boost::regex CompilePattern(const std::string& pattern, bool case_sensitive,
                            const Rule& rule) {
  boost::regex::flag_type flags = boost::regex::perl;
  if (!case_sensitive) flags |= boost::regex::icase;
  try {
    return boost::regex(pattern, flags);
  } catch (const boost::regex_error& e) {
    throw PatternError("rule at line " + std::to_string(rule.line) + " (" +
                           rule.concept_id + "): bad pattern '" + pattern +
                           "': " + e.what(),
                       rule.line);
  }
}

std::optional<boost::regex> CompileGuard(const std::optional<std::string>& p,
                                         bool anchor_end, const Rule& rule) {
  if (!p) return std::nullopt;
  return CompilePattern(anchor_end ? "(?:" + *p + ")\\z" : *p,
                        rule.case_sensitive, rule);
}

}  // namespace

CompiledTagger::CompiledTagger(std::vector<Rule> rules, const Ontology& ontology)
    : rules_(std::move(rules)) {
  std::stable_sort(rules_.begin(), rules_.end(), [](const Rule& a, const Rule& b) {
    return a.priority > b.priority;
  });
  for (const Rule& r : rules_) {
    if (!ontology.Contains(r.concept_id)) {
      throw UnknownConcept("rule at line " + std::to_string(r.line) +
                           " names unknown concept '" + r.concept_id + "'");
    }
    Compiled c;
    c.pattern = CompilePattern(r.pattern, r.case_sensitive, r);
    c.require_following = CompileGuard(r.context.require_following, false, r);
    c.forbid_following = CompileGuard(r.context.forbid_following, false, r);
    c.require_preceding = CompileGuard(r.context.require_preceding, true, r);
    c.forbid_preceding = CompileGuard(r.context.forbid_preceding, true, r);
    c.numeric = ontology.NumericKindOf(r.concept_id);
    compiled_.push_back(std::move(c));
  }
}

bool CompiledTagger::GuardsPass(const Rule& rule, const Compiled& c,
                                std::string_view text, std::size_t start,
                                std::size_t end) const {
  const char* base = text.data();
  std::size_t follow_end = std::min(text.size(), end + rule.context.window);
  std::size_t precede_begin = start > rule.context.window ? start - rule.context.window : 0;

  auto following = [&](const boost::regex& re) {
    auto flags = boost::match_continuous;
    if (end > 0) flags |= boost::match_prev_avail;
    return boost::regex_search(base + end, base + follow_end, re, flags);
  };
  auto preceding = [&](const boost::regex& re) {
    auto flags = boost::match_default;
    if (precede_begin > 0) flags |= boost::match_prev_avail;
    return boost::regex_search(base + precede_begin, base + start, re, flags);
  };

  if (c.require_following && !following(*c.require_following)) return false;
  if (c.forbid_following && following(*c.forbid_following)) return false;
  if (c.require_preceding && !preceding(*c.require_preceding)) return false;
  if (c.forbid_preceding && preceding(*c.forbid_preceding)) return false;
  return true;
}

std::vector<SpanAnnotation> CompiledTagger::Tag(const Sequence& sequence) const {
  struct Candidate {
    std::size_t start;
    std::size_t end;
    std::size_t rule;
  };
  std::string_view text = sequence.text;
  std::map<std::string, std::vector<Candidate>> by_concept;

  for (std::size_t r = 0; r < rules_.size(); ++r) {
    boost::cregex_iterator it(text.data(), text.data() + text.size(),
                              compiled_[r].pattern);
    for (; it != boost::cregex_iterator(); ++it) {
      const boost::cmatch& m = *it;
      if (m.length(std::size_t{0}) == 0) continue;
      std::size_t start = static_cast<std::size_t>(m.position(std::size_t{0}));
      std::size_t end = start + static_cast<std::size_t>(m.length(std::size_t{0}));
      if (!GuardsPass(rules_[r], compiled_[r], text, start, end)) continue;
      by_concept[rules_[r].concept_id].push_back({start, end, r});
    }
  }

  std::vector<SpanAnnotation> spans;
  for (auto& [concept_id, cands] : by_concept) {
    std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
      if (a.start != b.start) return a.start < b.start;
      if (a.end != b.end) return a.end > b.end;
      return a.rule < b.rule;
    });
    std::size_t i = 0;
    while (i < cands.size()) {
      // Cluster of transitively overlapping matches.
      std::size_t cluster_end = cands[i].end;
      Candidate best = cands[i];
      std::size_t j = i + 1;
      for (; j < cands.size() && cands[j].start < cluster_end; ++j) {
        cluster_end = std::max(cluster_end, cands[j].end);
        std::size_t len = cands[j].end - cands[j].start;
        std::size_t best_len = best.end - best.start;
        if (len > best_len || (len == best_len && cands[j].start == best.start &&
                               cands[j].rule < best.rule)) {
          best = cands[j];
        }
      }
      i = j;

      SpanAnnotation a;
      a.ref = RefOf(sequence);
      a.concept_id = concept_id;
      a.start = best.start;
      a.end = best.end;
      if (const auto& kind = compiled_[best.rule].numeric) {
        try {
          a.numeric_value =
              NormalizeNumeric(text.substr(a.start, a.end - a.start), *kind).value;
        } catch (const NoNumber&) {
          continue;
        }
      }
      spans.push_back(std::move(a));
    }
  }
  std::sort(spans.begin(), spans.end(), [](const SpanAnnotation& a, const SpanAnnotation& b) {
    return std::tie(a.start, a.end, a.concept_id) < std::tie(b.start, b.end, b.concept_id);
  });
  return spans;
}

std::vector<SpanAnnotation> CompiledTagger::TagAll(
    std::span<const Sequence> sequences) const {
  std::vector<SpanAnnotation> all;
  for (const Sequence& s : sequences) {
    std::vector<SpanAnnotation> spans = Tag(s);
    all.insert(all.end(), std::make_move_iterator(spans.begin()),
               std::make_move_iterator(spans.end()));
  }
  return all;
}

std::vector<std::string> CompiledTagger::CoveredConcepts() const {
  std::set<std::string> ids;
  for (const Rule& r : rules_) ids.insert(r.concept_id);
  return {ids.begin(), ids.end()};
}

CompiledTagger CompileRules(std::istream& in, const Ontology& ontology) {
  return CompiledTagger(ParseRules(in), ontology);
}

CompiledTagger CompileRules(const std::string& path, const Ontology& ontology) {
  std::ifstream in(path);
  if (!in) throw NotFound("cannot open rules file: " + path);
  return CompileRules(in, ontology);
}

}  // namespace rehab
