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


// Few-shot yes/no prompts per concept, chat backends and prompt scoring.
//
// A prompt is a System instruction naming the concept, two positive and two
// negative training items answered "Yes."/"No." (ordered pos, neg, pos,
// neg) and the item to classify as the final User turn. Items are shown as
// "<label>: <text>". Rendered prompts join "Role: content" turns with blank
// lines.

#ifndef REHAB_PROMPTGEN_H_
#define REHAB_PROMPTGEN_H_

#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rehab/evaluator.h"
#include "rehab/goldstore.h"
#include "rehab/ontology.h"

namespace rehab {

enum class Role { kSystem, kUser, kModel };
std::string_view RoleName(Role role);

struct Turn {
  Role role = Role::kUser;
  std::string content;

  bool operator==(const Turn&) const = default;
};

struct Prompt {
  std::string concept_id;
  std::vector<Turn> turns;
  SequenceRef target;

  std::string Render() const;
  // Hex SHA-256 of Render().
  std::string Hash() const;
  bool operator==(const Prompt&) const = default;
};

std::string SystemInstruction(std::string_view display_name);
// "<label>: <text>".
std::string ItemText(const Sequence& sequence);

// Binary concepts with at least two positive and two negative sequences in
// the training split.
std::vector<std::string> EligibleConcepts(const GoldCorpus& gold, const Ontology& ontology);

// Assembles a prompt from explicit examples; each span must hold exactly
// two sequences.
Prompt BuildPromptFromExamples(const Concept& target_concept,
                               std::span<const Sequence> positives,
                               std::span<const Sequence> negatives,
                               const Sequence& target);

// Training-split sequences grouped by label for one corpus; build once and
// reuse for many prompts.
class ExamplePool {
 public:
  ExamplePool(const GoldCorpus& gold, const Ontology& ontology);

  // Seeded draw of two positive and two negative examples for the target.
  // Sequences equal to the target (same reference or same text) are never
  // used. Throws Ineligible when fewer than two usable examples exist for
  // either class, NotFound for unknown concepts.
  Prompt Build(const std::string& concept_id, const Sequence& target,
               std::uint64_t seed) const;

 private:
  const Ontology& ontology_;
  std::vector<Sequence> train_;
  // concept id -> positive flag per training sequence.
  std::map<std::string, std::vector<bool>> positive_;
};

// Seeded draw of the examples from the training split. Sequences equal to
// the target (same reference or same text) are never used. Throws
// Ineligible when fewer than two usable examples exist for either class.
Prompt BuildPrompt(const Concept& target_concept, const GoldCorpus& gold, const Ontology& ontology,
                   const Sequence& target, std::uint64_t seed);

enum class Answer { kPositive, kNegative, kUnparseable };
Answer ParseResponse(std::string_view text);

class ChatBackend {
 public:
  virtual ~ChatBackend() = default;
  // Must be safe to call from several threads. Throws BackendError.
  virtual std::string Send(const std::vector<Turn>& turns) = 0;
};

// Offline stand-in: reads the concept name out of the System turn and
// answers "Yes." iff one of that concept's keywords occurs in the final
// User turn (case-insensitive, not glued to other letters).
class MockBackend : public ChatBackend {
 public:
  // display name -> keywords.
  explicit MockBackend(std::map<std::string, std::vector<std::string>> keywords);
  std::string Send(const std::vector<Turn>& turns) override;

  // Each concept's keyword is its lowercased display name.
  static std::map<std::string, std::vector<std::string>> DefaultKeywords(
      const Ontology& ontology);

 private:
  std::map<std::string, std::vector<std::string>> keywords_;
};

// Answers from a JSONL file of {"prompt_hash", "response"} records.
class ReplayBackend : public ChatBackend {
 public:
  explicit ReplayBackend(const std::string& path);
  std::string Send(const std::vector<Turn>& turns) override;

 private:
  std::map<std::string, std::string> responses_;
};

struct LiveBackendConfig {
  // Base URL of an OpenAI-compatible server, e.g. "https://host:443".
  std::string endpoint;
  std::string path = "/v1/chat/completions";
  std::string model;
  // Name of the environment variable holding the bearer token.
  std::string token_env = "REHAB_API_TOKEN";
  double requests_per_second = 1.0;
  int max_retries = 5;
  std::chrono::milliseconds initial_backoff{1000};
  std::chrono::milliseconds max_backoff{60000};
  std::chrono::seconds timeout{60};
};

// HTTP chat-completions client with token-bucket pacing and bounded
// exponential backoff on 429 and 5xx replies.
class LiveBackend : public ChatBackend {
 public:
  explicit LiveBackend(LiveBackendConfig config);
  std::string Send(const std::vector<Turn>& turns) override;

 private:
  void Pace();

  LiveBackendConfig config_;
  std::string token_;
  std::mutex pace_mutex_;
  std::chrono::steady_clock::time_point next_slot_;
};

struct CachedResponse {
  std::string prompt_hash;
  std::string concept_id;
  SequenceRef target;
  std::string response;
};

// Append-only JSONL store of backend responses keyed by prompt hash; the
// only shared mutable state of a prompt run. Writes are serialized and
// flushed per record so an interrupted run can resume.
class ResponseCache {
 public:
  // Loads existing records; a missing file starts an empty cache.
  explicit ResponseCache(std::string path);

  std::optional<std::string> Get(const std::string& prompt_hash) const;
  void Put(const CachedResponse& record);
  std::size_t size() const;

 private:
  std::string path_;
  mutable std::mutex mutex_;
  std::map<std::string, std::string> entries_;
};

struct PromptEvalOptions {
  std::uint64_t seed = 42;
  int max_in_flight = 1;
};

struct PromptEvalResult {
  std::map<std::string, Prf> per_concept;
  std::map<std::string, int> unparseable;
  // Unweighted means over concepts.
  double mean_precision = 0.0;
  double mean_recall = 0.0;
  double mean_f1 = 0.0;
  int prompts = 0;
  int backend_calls = 0;
};

// One prompt per (concept, test sequence). Unparseable responses count as
// negative and are tallied. With a cache, answered prompts are never sent
// again. A BackendError stops the run after in-flight calls finish and is
// rethrown; everything answered so far is already in the cache.
PromptEvalResult RunPromptEval(ChatBackend& backend, const GoldCorpus& gold,
                               const Ontology& ontology,
                               std::span<const std::string> concepts,
                               const PromptEvalOptions& options,
                               ResponseCache* cache = nullptr);

// Serializes prompts as JSONL {"concept_id","section_id","seq_index",
// "prompt_hash","turns":[{"role","content"}]}.
std::string PromptToJsonLine(const Prompt& prompt);

}  // namespace rehab

#endif  // REHAB_PROMPTGEN_H_
