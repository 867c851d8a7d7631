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


#include "rehab/promptgen.h"

#include <openssl/evp.h>

#include <atomic>
#include <exception>
#include <thread>

#include "json.hpp"
#include "rehab/error.h"
#include "rehab/text.h"

namespace rehab {

using nlohmann::ordered_json;

std::string_view RoleName(Role role) {
  switch (role) {
    case Role::kSystem: return "System";
    case Role::kUser: return "User";
    case Role::kModel: return "Model";
  }
  return "?";
}

std::string Prompt::Render() const {
  std::string out;
  for (std::size_t i = 0; i < turns.size(); ++i) {
    if (i) out += "\n\n";
    out += RoleName(turns[i].role);
    out += ": ";
    out += turns[i].content;
  }
  return out;
}

std::string Prompt::Hash() const {
  std::string text = Render();
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

std::string SystemInstruction(std::string_view display_name) {
  return "You are an assistant assigned to determine if a given text segment from a "
         "medical record contains mentions of " +
         std::string(display_name) + ". You must answer yes or no.";
}

std::string ItemText(const Sequence& sequence) {
  return sequence.label_number + ": " + sequence.text;
}

std::vector<std::string> EligibleConcepts(const GoldCorpus& gold, const Ontology& ontology) {
  const GoldCorpus train = gold.HasSplit() ? gold.Subset(Split::kTrain) : gold;
  LabelMap labels = SequenceTargets(train, ontology);
  std::vector<std::string> out;
  for (const std::string& id : ontology.BinaryConceptIds()) {
    int pos = 0;
    for (const auto& [ref, ids] : labels) pos += ids.count(id) ? 1 : 0;
    int neg = static_cast<int>(labels.size()) - pos;
    if (pos >= 2 && neg >= 2) out.push_back(id);
  }
  return out;
}

Prompt BuildPromptFromExamples(const Concept& target_concept, std::span<const Sequence> positives,
                               std::span<const Sequence> negatives, const Sequence& target) {
  if (positives.size() != 2 || negatives.size() != 2) {
    throw Ineligible("a prompt needs exactly two positive and two negative examples");
  }
  Prompt p;
  p.concept_id = target_concept.id;
  p.target = RefOf(target);
  p.turns.push_back({Role::kSystem, SystemInstruction(target_concept.display_name)});
  for (int k = 0; k < 2; ++k) {
    p.turns.push_back({Role::kUser, ItemText(positives[k])});
    p.turns.push_back({Role::kModel, "Yes."});
    p.turns.push_back({Role::kUser, ItemText(negatives[k])});
    p.turns.push_back({Role::kModel, "No."});
  }
  p.turns.push_back({Role::kUser, ItemText(target)});
  return p;
}

ExamplePool::ExamplePool(const GoldCorpus& gold, const Ontology& ontology)
    : ontology_(ontology) {
  const GoldCorpus train = gold.HasSplit() ? gold.Subset(Split::kTrain) : gold;
  train_ = train.sequences;
  LabelMap labels = SequenceTargets(train, ontology);
  for (const std::string& id : ontology.BinaryConceptIds()) {
    std::vector<bool>& flags = positive_[id];
    flags.reserve(train_.size());
    for (const Sequence& s : train_) flags.push_back(labels.at(RefOf(s)).count(id) > 0);
  }
}

Prompt ExamplePool::Build(const std::string& concept_id, const Sequence& target,
                          std::uint64_t seed) const {
  const Concept& target_concept = ontology_.Lookup(concept_id);
  auto it = positive_.find(concept_id);
  if (it == positive_.end()) throw Ineligible(concept_id + " is not a binary concept");
  std::vector<std::size_t> pos, neg;
  const SequenceRef target_ref = RefOf(target);
  for (std::size_t i = 0; i < train_.size(); ++i) {
    if (RefOf(train_[i]) == target_ref || train_[i].text == target.text) continue;
    (it->second[i] ? pos : neg).push_back(i);
  }
  if (pos.size() < 2 || neg.size() < 2) {
    throw Ineligible(concept_id + " has fewer than two usable positive or negative examples");
  }
  std::string key = concept_id;
  key += '\0';
  key += target.section_id + "#" + std::to_string(target.index);
  Rng rng(seed ^ Fnv1a64(key));
  auto draw_two = [&rng](const std::vector<std::size_t>& pool) {
    std::size_t a = rng.Below(pool.size());
    std::size_t b = rng.Below(pool.size() - 1);
    if (b >= a) ++b;
    return std::pair{pool[a], pool[b]};
  };
  auto [p0, p1] = draw_two(pos);
  auto [n0, n1] = draw_two(neg);
  std::vector<Sequence> positives = {train_[p0], train_[p1]};
  std::vector<Sequence> negatives = {train_[n0], train_[n1]};
  return BuildPromptFromExamples(target_concept, positives, negatives, target);
}

Prompt BuildPrompt(const Concept& target_concept, const GoldCorpus& gold, const Ontology& ontology,
                   const Sequence& target, std::uint64_t seed) {
  return ExamplePool(gold, ontology).Build(target_concept.id, target, seed);
}

Answer ParseResponse(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size() && !IsAsciiAlnum(text[i])) ++i;
  std::string rest = ToLowerAscii(text.substr(i));
  auto leads = [&rest](std::string_view word) {
    return rest.starts_with(word) &&
           (rest.size() == word.size() || !IsAsciiAlpha(rest[word.size()]));
  };
  if (leads("yes")) return Answer::kPositive;
  if (leads("no")) return Answer::kNegative;
  return Answer::kUnparseable;
}

PromptEvalResult RunPromptEval(ChatBackend& backend, const GoldCorpus& gold,
                               const Ontology& ontology, std::span<const std::string> concepts,
                               const PromptEvalOptions& options, ResponseCache* cache) {
  const ExamplePool pool(gold, ontology);
  const std::vector<Sequence> test =
      gold.HasSplit() ? gold.SequencesIn(Split::kTest) : gold.sequences;
  const LabelMap gold_labels =
      gold.HasSplit() ? SequenceTargets(gold, ontology, Split::kTest) : SequenceTargets(gold, ontology);

  const std::size_t n_tasks = concepts.size() * test.size();
  std::vector<Answer> answers(n_tasks, Answer::kUnparseable);
  std::atomic<std::size_t> next{0};
  std::atomic<int> calls{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto worker = [&] {
    for (;;) {
      if (failed.load()) return;
      std::size_t t = next.fetch_add(1);
      if (t >= n_tasks) return;
      const std::string& concept_id = concepts[t / test.size()];
      const Sequence& target = test[t % test.size()];
      try {
        Prompt prompt = pool.Build(concept_id, target, options.seed);
        std::string hash = prompt.Hash();
        std::optional<std::string> response = cache ? cache->Get(hash) : std::nullopt;
        if (!response) {
          response = backend.Send(prompt.turns);
          calls.fetch_add(1);
          if (cache) cache->Put({hash, concept_id, prompt.target, *response});
        }
        answers[t] = ParseResponse(*response);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true);
        return;
      }
    }
  };
  const int threads = std::max(1, options.max_in_flight);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool_threads;
    for (int k = 0; k < threads; ++k) pool_threads.emplace_back(worker);
    for (std::thread& th : pool_threads) th.join();
  }
  if (error) std::rethrow_exception(error);

  PromptEvalResult result;
  result.prompts = static_cast<int>(n_tasks);
  result.backend_calls = calls.load();
  for (std::size_t c = 0; c < concepts.size(); ++c) {
    LabelMap pred;
    int unparseable = 0;
    for (const auto& [ref, unused] : gold_labels) pred[ref];
    for (std::size_t s = 0; s < test.size(); ++s) {
      Answer a = answers[c * test.size() + s];
      if (a == Answer::kPositive) pred[RefOf(test[s])].insert(concepts[c]);
      if (a == Answer::kUnparseable) ++unparseable;
    }
    result.per_concept[concepts[c]] = SequencePrf(pred, gold_labels, concepts[c]);
    result.unparseable[concepts[c]] = unparseable;
  }
  if (!concepts.empty()) {
    for (const auto& [id, prf] : result.per_concept) {
      result.mean_precision += prf.precision;
      result.mean_recall += prf.recall;
      result.mean_f1 += prf.f1;
    }
    const auto n = static_cast<double>(result.per_concept.size());
    result.mean_precision /= n;
    result.mean_recall /= n;
    result.mean_f1 /= n;
  }
  return result;
}

std::string PromptToJsonLine(const Prompt& prompt) {
  ordered_json j;
  j["concept_id"] = prompt.concept_id;
  j["section_id"] = prompt.target.section_id;
  j["seq_index"] = prompt.target.index;
  j["prompt_hash"] = prompt.Hash();
  ordered_json turns = ordered_json::array();
  for (const Turn& t : prompt.turns) {
    turns.push_back({{"role", std::string(RoleName(t.role))}, {"content", t.content}});
  }
  j["turns"] = turns;
  return j.dump();
}

}  // namespace rehab
