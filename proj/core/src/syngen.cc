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


#include "rehab/syngen.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <optional>
#include <set>
#include <tuple>

#include "json.hpp"
#include "rehab/error.h"
#include "rehab/text.h"

namespace rehab {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Phrasebook

const std::string& PhraseOption::primary() const {
  static const std::string kNone;
  for (const PhraseSegment& s : segments) {
    if (!s.concepts.empty()) return s.concepts.front();
  }
  return kNone;
}

std::vector<std::string> PhraseOption::AllConcepts() const {
  std::vector<std::string> out;
  for (const PhraseSegment& s : segments) out.insert(out.end(), s.concepts.begin(), s.concepts.end());
  for (const PhraseSpan& s : spans) out.push_back(s.concept_id);
  return out;
}

namespace {

PhraseSegment ParseSegment(const json& j) {
  PhraseSegment s;
  s.text = j.at("text").get<std::string>();
  s.concepts = j.value("concepts", std::vector<std::string>{});
  s.values = j.value("values", std::map<std::string, std::string>{});
  return s;
}

PhraseOption ParseOption(const json& j) {
  PhraseOption o;
  if (j.contains("segments")) {
    for (const json& s : j["segments"]) o.segments.push_back(ParseSegment(s));
  } else {
    o.segments.push_back(ParseSegment(j));
  }
  const json spans = j.value("spans", json::array());
  for (const json& s : spans) {
    o.spans.push_back({s.at("concept").get<std::string>(), s.at("start").get<std::size_t>(),
                       s.at("end").get<std::size_t>()});
  }
  o.follow = j.value("follow", std::vector<std::string>{});
  o.bound = j.value("bound", false);
  o.consumes = j.value("consumes", std::string());
  o.heldout = j.value("heldout", false);
  o.weight = j.value("weight", 1.0);
  return o;
}

std::pair<int, int> ParseRange(const json& j, const std::string& what) {
  auto v = j.get<std::vector<int>>();
  if (v.size() != 2 || v[0] > v[1]) throw ConfigError(what + " must be [lo, hi] with lo <= hi");
  return {v[0], v[1]};
}

}  // namespace

Phrasebook Phrasebook::Parse(std::string_view json_text) {
  try {
    json j = json::parse(json_text);
    Phrasebook pb;
    const json numbers = j.value("numbers", json::object());
    for (const auto& [name, range] : numbers.items()) {
      pb.numbers[name] = ParseRange(range, "number range " + name);
    }
    if (j.contains("items_per_section")) {
      pb.items_per_section = ParseRange(j["items_per_section"], "items_per_section");
    }
    pb.placeholder_slot = j.value("placeholder_slot", std::string());
    pb.placeholders = j.value("placeholders", std::vector<std::string>{});
    for (const json& t : j.at("templates")) {
      pb.templates.push_back({t.at("name").get<std::string>(),
                              t.at("slots").get<std::vector<std::string>>()});
    }
    for (const auto& [name, js] : j.at("slots").items()) {
      PhraseSlot slot;
      slot.name = name;
      slot.probability = js.at("probability").get<double>();
      slot.join_probability = js.value("join_probability", 0.0);
      slot.join_text = js.value("join_text", std::string("/"));
      slot.prefix = js.value("prefix", std::string(" "));
      for (const json& o : js.at("options")) slot.options.push_back(ParseOption(o));
      pb.slots[name] = std::move(slot);
    }
    return pb;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("phrasebook: ") + e.what());
  }
}

Phrasebook Phrasebook::Load(const std::string& path) { return Parse(ReadFile(path)); }

std::vector<std::string> Phrasebook::Concepts() const {
  std::set<std::string> ids;
  for (const auto& [name, slot] : slots) {
    for (const PhraseOption& o : slot.options) {
      if (o.heldout) continue;
      for (const std::string& c : o.AllConcepts()) ids.insert(c);
    }
  }
  return {ids.begin(), ids.end()};
}

void Phrasebook::Validate(const Ontology& ontology) const {
  if (templates.empty()) throw ConfigError("phrasebook has no templates");
  for (const ItemTemplate& t : templates) {
    for (const std::string& s : t.slots) {
      if (!slots.count(s)) throw ConfigError("template " + t.name + " names unknown slot " + s);
    }
  }
  for (const auto& [name, slot] : slots) {
    if (slot.probability < 0 || slot.probability > 1 || slot.join_probability < 0 ||
        slot.join_probability > 1) {
      throw ConfigError("slot " + name + " has a probability outside [0, 1]");
    }
    if (std::none_of(slot.options.begin(), slot.options.end(),
                     [](const PhraseOption& o) { return !o.heldout; })) {
      throw ConfigError("slot " + name + " has no regular options");
    }
    for (const PhraseOption& o : slot.options) {
      if (o.weight <= 0) throw ConfigError("slot " + name + " has a non-positive weight");
      if (!o.consumes.empty() && !slots.count(o.consumes)) {
        throw ConfigError("slot " + name + " option consumes unknown slot " + o.consumes);
      }
      for (const std::string& c : o.AllConcepts()) {
        if (!ontology.Contains(c)) {
          throw ConfigError("phrasebook concept '" + c + "' is not in the ontology");
        }
      }
      std::size_t len = 0;
      for (const PhraseSegment& s : o.segments) {
        len += s.text.size();
        for (const auto& [c, expr] : s.values) {
          if (!ontology.NumericKindOf(c)) {
            throw ConfigError("value given for non-numeric concept " + c);
          }
          std::string var = expr.substr(0, expr.find('*'));
          if (!numbers.count(var)) throw ConfigError("unknown number variable " + var);
        }
        for (const std::string& c : s.concepts) {
          if (ontology.NumericKindOf(c) && !s.values.count(c)) {
            throw ConfigError("numeric concept " + c + " has no value expression");
          }
        }
      }
      for (const PhraseSpan& s : o.spans) {
        if (s.start >= s.end || s.end > len) {
          throw ConfigError("span of " + s.concept_id + " is outside its option text");
        }
      }
    }
  }
  if (!placeholder_slot.empty() && placeholders.empty()) {
    throw ConfigError("placeholder_slot set without placeholders");
  }
}

// ---------------------------------------------------------------------------
// Generation

namespace {

struct GenSpan {
  std::string concept_id;
  std::size_t start = 0;
  std::size_t end = 0;
  std::optional<std::int64_t> value;
};

struct Phrase {
  std::string text;
  std::vector<GenSpan> spans;
};

struct Item {
  std::string text;
  std::vector<GenSpan> spans;
  std::optional<std::pair<std::size_t, std::size_t>> name_range;
};

std::int64_t EvalValue(const std::string& expr, const std::map<std::string, int>& vars) {
  std::size_t star = expr.find('*');
  std::int64_t v = vars.at(expr.substr(0, star));
  if (star != std::string::npos) v *= std::stoll(expr.substr(star + 1));
  return v;
}

Phrase Render(const PhraseOption& o, const std::map<std::string, int>& vars) {
  Phrase p;
  for (const PhraseSegment& seg : o.segments) {
    std::string text;
    for (std::size_t i = 0; i < seg.text.size(); ++i) {
      if (seg.text[i] == '{') {
        std::size_t close = seg.text.find('}', i);
        text += std::to_string(vars.at(seg.text.substr(i + 1, close - i - 1)));
        i = close;
      } else {
        text += seg.text[i];
      }
    }
    std::size_t start = p.text.size();
    p.text += text;
    if (o.spans.empty()) {
      for (const std::string& c : seg.concepts) {
        GenSpan s{c, start, p.text.size(), std::nullopt};
        if (auto it = seg.values.find(c); it != seg.values.end()) s.value = EvalValue(it->second, vars);
        p.spans.push_back(std::move(s));
      }
    }
  }
  for (const PhraseSpan& s : o.spans) p.spans.push_back({s.concept_id, s.start, s.end, std::nullopt});
  return p;
}

void Append(Phrase& into, const Phrase& more, const std::string& sep) {
  if (!into.text.empty()) into.text += sep;
  std::size_t base = into.text.size();
  into.text += more.text;
  for (GenSpan s : more.spans) {
    s.start += base;
    s.end += base;
    into.spans.push_back(std::move(s));
  }
}

const PhraseOption& WeightedPick(Rng& rng, const std::vector<const PhraseOption*>& options) {
  double total = 0.0;
  for (const PhraseOption* o : options) total += o->weight;
  double r = rng.Uniform() * total;
  for (const PhraseOption* o : options) {
    if (r < o->weight) return *o;
    r -= o->weight;
  }
  return *options.back();
}

// Replaces text[pos, pos+len) by `repl`. Span ends inside the replaced
// range are clamped into the new text; zero-length spans are removed and
// returned.
std::vector<GenSpan> Edit(Item& item, std::size_t pos, std::size_t len, const std::string& repl) {
  const std::size_t new_len = repl.size();
  auto map = [&](std::size_t p) {
    if (p <= pos) return p;
    if (p >= pos + len) return p - len + new_len;
    return std::min(p, pos + new_len);
  };
  item.text.replace(pos, len, repl);
  std::vector<GenSpan> kept, dropped;
  for (GenSpan s : item.spans) {
    s.start = map(s.start);
    s.end = map(s.end);
    (s.start < s.end ? kept : dropped).push_back(std::move(s));
  }
  item.spans = std::move(kept);
  if (item.name_range) {
    item.name_range->first = map(item.name_range->first);
    item.name_range->second = map(item.name_range->second);
  }
  return dropped;
}

class Generator {
 public:
  Generator(const GeneratorConfig& config, const Ontology& ontology)
      : config_(config), pb_(config.phrasebook), ontology_(ontology),
        rng_(config.seed),
        placeholder_rng_(config.seed ^ 0x9e3779b97f4a7c15ULL),
        typo_rng_(config.seed ^ 0xc2b2ae3d27d4eb4fULL) {}

  SyntheticCorpus Run();

 private:
  // Slot whose regular options have this primary concept.
  std::string HomeSlot(const std::string& concept_id) const;
  Item MakeItem(const ItemTemplate& tmpl, const std::map<std::string, std::string>& forced);
  std::optional<Phrase> MakeSlot(const PhraseSlot& slot, const std::string* forced,
                                 bool allow_consumers, const std::map<std::string, int>& vars,
                                 const PhraseOption** chosen);
  void AddNoise(Item& item, const SequenceRef& ref, SyntheticCorpus& out);

  const GeneratorConfig& config_;
  const Phrasebook& pb_;
  const Ontology& ontology_;
  Rng rng_;
  Rng placeholder_rng_;
  Rng typo_rng_;
};

std::string Generator::HomeSlot(const std::string& concept_id) const {
  for (const auto& [name, slot] : pb_.slots) {
    for (const PhraseOption& o : slot.options) {
      if (!o.heldout && o.primary() == concept_id) return name;
    }
  }
  throw ConfigError("min_positives concept " + concept_id +
                    " is not the primary concept of any phrasebook option");
}

std::optional<Phrase> Generator::MakeSlot(const PhraseSlot& slot, const std::string* forced,
                                          bool allow_consumers,
                                          const std::map<std::string, int>& vars,
                                          const PhraseOption** chosen) {
  std::vector<const PhraseOption*> pool;
  for (const PhraseOption& o : slot.options) {
    if (o.heldout) continue;
    if (!allow_consumers && !o.consumes.empty()) continue;
    if (forced && o.primary() != *forced) continue;
    pool.push_back(&o);
  }
  if (pool.empty()) return std::nullopt;
  const PhraseOption* pick = &WeightedPick(rng_, pool);
  if (config_.heldout_rate > 0 && rng_.Bernoulli(config_.heldout_rate)) {
    std::vector<const PhraseOption*> variants;
    for (const PhraseOption& o : slot.options) {
      if (o.heldout && o.primary() == pick->primary()) variants.push_back(&o);
    }
    if (!variants.empty()) pick = variants[rng_.Below(variants.size())];
  }
  *chosen = pick;
  Phrase p = Render(*pick, vars);
  if (!pick->follow.empty()) {
    p.text += " " + pick->follow[rng_.Below(pick->follow.size())];
  }
  if (slot.join_probability > 0 && rng_.Bernoulli(slot.join_probability)) {
    std::vector<const PhraseOption*> others;
    for (const PhraseOption& o : slot.options) {
      if (!o.heldout && o.consumes.empty() && !o.bound && o.primary() != pick->primary()) {
        others.push_back(&o);
      }
    }
    if (!others.empty()) {
      const PhraseOption& second = WeightedPick(rng_, others);
      Phrase q = Render(second, vars);
      if (!second.follow.empty()) q.text += " " + second.follow[rng_.Below(second.follow.size())];
      Append(p, q, slot.join_text);
    }
  }
  return p;
}

Item Generator::MakeItem(const ItemTemplate& tmpl,
                         const std::map<std::string, std::string>& forced) {
  std::map<std::string, int> vars;
  for (const auto& [name, range] : pb_.numbers) vars[name] = static_cast<int>(rng_.Between(range.first, range.second));

  std::map<std::string, bool> active;
  for (const std::string& s : tmpl.slots) {
    bool draw = rng_.Bernoulli(pb_.slots.at(s).probability);
    active[s] = draw || forced.count(s);
  }

  Item item;
  Phrase assembled;
  std::set<std::string> consumed;
  std::set<std::string> required;
  for (const std::string& s : tmpl.slots) {
    if (consumed.count(s)) continue;
    if (!active[s] && !required.count(s)) continue;
    const PhraseSlot& slot = pb_.slots.at(s);
    auto f = forced.find(s);
    // An option that swallows a slot may not be used when that slot is
    // forced to carry its own concept.
    bool allow_consumers = true;
    for (const PhraseOption& o : slot.options) {
      if (!o.consumes.empty() && forced.count(o.consumes)) allow_consumers = false;
    }
    const PhraseOption* chosen = nullptr;
    std::optional<Phrase> p =
        MakeSlot(slot, f == forced.end() ? nullptr : &f->second, allow_consumers, vars, &chosen);
    if (!p) continue;
    if (!chosen->consumes.empty()) consumed.insert(chosen->consumes);
    if (chosen->bound) {
      // The next slot must be present to give the bare letter its meaning.
      auto it = std::find(tmpl.slots.begin(), tmpl.slots.end(), s);
      if (it + 1 != tmpl.slots.end()) required.insert(*(it + 1));
    }
    std::size_t before = assembled.text.empty() ? 0 : assembled.text.size() + slot.prefix.size();
    Append(assembled, *p, slot.prefix);
    if (s == pb_.placeholder_slot) item.name_range = {{before, assembled.text.size()}};
  }
  item.text = std::move(assembled.text);
  item.spans = std::move(assembled.spans);
  return item;
}

void Generator::AddNoise(Item& item, const SequenceRef& ref, SyntheticCorpus& out) {
  auto log_dropped = [&](const std::vector<GenSpan>& dropped, const std::string& why) {
    for (const GenSpan& s : dropped) out.dropped.push_back({ref, s.concept_id, why});
  };
  if (item.name_range) {
    ++out.name_slots;
    if (placeholder_rng_.Bernoulli(config_.noise.placeholder_rate)) {
      const std::string& ph = placeholder_rng_.Pick(pb_.placeholders);
      auto [a, b] = *item.name_range;
      log_dropped(Edit(item, a, b - a, ph), "placeholder replaced the span");
      ++out.placeholder_substitutions;
    }
  }
  if (config_.noise.typo_rate <= 0) return;
  std::size_t i = 0;
  while (i < item.text.size()) {
    if (item.text[i] == '[') {
      std::size_t close = item.text.find(']', i);
      i = close == std::string::npos ? item.text.size() : close + 1;
      continue;
    }
    if (!IsAsciiAlpha(item.text[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < item.text.size() && IsAsciiAlpha(item.text[j])) ++j;
    const std::size_t len = j - i;
    std::size_t next = j;
    if (typo_rng_.Bernoulli(config_.noise.typo_rate)) {
      bool can_drop = len >= 3;
      bool can_abbreviate = len >= 4;
      bool abbreviate = can_abbreviate && (!can_drop || typo_rng_.Bernoulli(0.5));
      if (abbreviate) {
        log_dropped(Edit(item, i + 1, len - 1, ""), "abbreviation removed the span");
        next = i + 1;
        ++out.typos;
      } else if (can_drop) {
        log_dropped(Edit(item, j - 1, 1, ""), "dropped letter removed the span");
        next = j - 1;
        ++out.typos;
      }
    }
    i = next;
  }
}

SyntheticCorpus Generator::Run() {
  const auto [lo, hi] = pb_.items_per_section;
  if (lo < 1) throw ConfigError("items_per_section must start at 1 or more");
  std::vector<int> counts(config_.n_sections);
  for (int& c : counts) c = static_cast<int>(rng_.Between(lo, hi));
  const int total = std::accumulate(counts.begin(), counts.end(), 0);
  std::vector<std::size_t> templates(total);
  for (std::size_t& t : templates) t = rng_.Below(pb_.templates.size());

  std::vector<std::map<std::string, std::string>> forced(total);
  for (const auto& [concept_id, k] : config_.min_positives) {
    if (k < 0) throw ConfigError("min_positives for " + concept_id + " is negative");
    const std::string home = HomeSlot(concept_id);
    std::vector<int> candidates;
    for (int i = 0; i < total; ++i) {
      const auto& slots = pb_.templates[templates[i]].slots;
      if (std::find(slots.begin(), slots.end(), home) != slots.end() && !forced[i].count(home)) {
        candidates.push_back(i);
      }
    }
    if (static_cast<int>(candidates.size()) < k) {
      throw ConfigError("cannot force " + std::to_string(k) + " items for " + concept_id +
                        ": only " + std::to_string(candidates.size()) + " free items");
    }
    for (int n = 0; n < k; ++n) {
      std::size_t pick = n + rng_.Below(candidates.size() - n);
      std::swap(candidates[n], candidates[pick]);
      forced[candidates[n]][home] = concept_id;
    }
  }

  SyntheticCorpus out;
  GoldCorpus& gold = out.gold;
  int item_no = 0;
  for (int s = 0; s < config_.n_sections; ++s) {
    char id[32];
    std::snprintf(id, sizeof id, "SYN_THERAPY_%04d", s + 1);
    Section section;
    section.doc_id = id;
    section.source_filename = section.doc_id + ".txt";
    gold.origin[section.doc_id] = s < config_.n_sections / 2 ? Origin::kEnriched : Origin::kRandom;

    int label = static_cast<int>(rng_.Between(1, 20));
    for (int k = 0; k < counts[s]; ++k, ++item_no, ++label) {
      const ItemTemplate& tmpl = pb_.templates[templates[item_no]];
      Item item = MakeItem(tmpl, forced[item_no]);
      SequenceRef ref{section.doc_id, k};
      AddNoise(item, ref, out);

      if (!section.text.empty()) section.text += '\n';
      std::string prefix = std::to_string(label) + ": ";
      Sequence q;
      q.section_id = section.doc_id;
      q.index = k;
      q.label_number = std::to_string(label);
      q.start = section.text.size() + prefix.size();
      q.end = q.start + item.text.size();
      q.text = item.text;
      section.text += prefix + item.text;
      gold.sequences.push_back(std::move(q));

      std::sort(item.spans.begin(), item.spans.end(), [](const GenSpan& a, const GenSpan& b) {
        return std::tie(a.start, a.end, a.concept_id) < std::tie(b.start, b.end, b.concept_id);
      });
      for (const GenSpan& g : item.spans) {
        gold.annotations.push_back({ref, g.concept_id, g.start, g.end, g.value});
      }
      out.trace.push_back({ref, tmpl.name});
    }
    section.placeholder_count = CountPlaceholders(section.text);
    gold.sections.push_back(std::move(section));
  }
  gold.Reindex();
  ValidateCorpus(gold, ontology_);
  return out;
}

}  // namespace

SyntheticCorpus GenerateCorpus(const GeneratorConfig& config, const Ontology& ontology) {
  if (config.n_sections < 1) throw ConfigError("n_sections must be positive");
  auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!in_unit(config.noise.typo_rate) || !in_unit(config.noise.placeholder_rate) ||
      !in_unit(config.heldout_rate)) {
    throw ConfigError("noise and held-out rates must lie in [0, 1]");
  }
  config.phrasebook.Validate(ontology);
  if (config.noise.placeholder_rate > 0 && config.phrasebook.placeholders.empty()) {
    throw ConfigError("placeholder_rate > 0 but the phrasebook has no placeholders");
  }
  return Generator(config, ontology).Run();
}

GoldCorpus DefaultSplit(const GoldCorpus& gold, std::uint64_t seed) {
  int enriched = 0, random = 0;
  for (const auto& [id, o] : gold.origin) (o == Origin::kEnriched ? enriched : random)++;
  int smallest = std::min(enriched > 0 ? enriched : random, random > 0 ? random : enriched);
  int per_origin = static_cast<int>(std::lround(smallest * 125.0 / 150.0));
  return SplitTrainTest(gold, per_origin, seed);
}

std::vector<NoteFile> RenderNotes(const SyntheticCorpus& corpus, std::uint64_t seed) {
  static const std::vector<std::string> kSubjective = {
      "Patient reports mild soreness after last visit.",
      "Pt states pain is 3/10 today.",
      "Patient arrived on time, no new complaints.",
      "Reports improved tolerance to home program."};
  static const std::vector<std::string> kAssessment = {
      "Tolerated treatment well.", "Fair tolerance, fatigue noted.",
      "Progressing toward goals."};
  Rng rng(seed);
  std::vector<NoteFile> notes;
  int n = 0;
  for (const Section& s : corpus.gold.sections) {
    std::string text = "PATIENT: [PERSONALNAME]\nDATE OF SERVICE: [DATE]\n\nSUBJECTIVE:\n" +
                       rng.Pick(kSubjective) + "\n\nTHERAPEUTIC PROCEDURES:\n" + s.text +
                       "\n\nASSESSMENT:\n" + rng.Pick(kAssessment) +
                       "\n\nPLAN:\nContinue plan of care.\n";
    notes.push_back({s.source_filename, std::move(text)});
    if (++n % 5 == 0) {
      char name[48];
      std::snprintf(name, sizeof name, "SYN_PROGRESS_%04d.txt", n / 5);
      notes.push_back({name, "PATIENT: [PERSONALNAME]\n\nSUBJECTIVE:\n" + rng.Pick(kSubjective) +
                                 "\n\nASSESSMENT:\n" + rng.Pick(kAssessment) + "\n"});
    }
  }
  std::sort(notes.begin(), notes.end(),
            [](const NoteFile& a, const NoteFile& b) { return a.filename < b.filename; });
  return notes;
}

}  // namespace rehab
