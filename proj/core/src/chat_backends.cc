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


#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "rehab/error.h"
#include "rehab/promptgen.h"
#include "rehab/text.h"

namespace rehab {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr std::string_view kMentionsOf = "contains mentions of ";
constexpr std::string_view kInstructionEnd = ". You must answer yes or no.";

std::string ConceptFromSystemTurn(const std::vector<Turn>& turns) {
  if (turns.empty() || turns.front().role != Role::kSystem) {
    throw BackendError("prompt does not start with a System turn");
  }
  const std::string& s = turns.front().content;
  std::size_t a = s.find(kMentionsOf);
  std::size_t b = s.rfind(kInstructionEnd);
  if (a == std::string::npos || b == std::string::npos || b < a + kMentionsOf.size()) {
    throw BackendError("unrecognised System turn");
  }
  a += kMentionsOf.size();
  return s.substr(a, b - a);
}

}  // namespace

MockBackend::MockBackend(std::map<std::string, std::vector<std::string>> keywords)
    : keywords_(std::move(keywords)) {
  for (auto& [name, words] : keywords_) {
    for (std::string& w : words) w = ToLowerAscii(w);
  }
}

std::map<std::string, std::vector<std::string>> MockBackend::DefaultKeywords(
    const Ontology& ontology) {
  std::map<std::string, std::vector<std::string>> out;
  for (const std::string& id : ontology.BinaryConceptIds()) {
    const Concept& c = ontology.Lookup(id);
    out[c.display_name].push_back(ToLowerAscii(c.display_name));
  }
  return out;
}

std::string MockBackend::Send(const std::vector<Turn>& turns) {
  std::string name = ConceptFromSystemTurn(turns);
  if (turns.back().role != Role::kUser) throw BackendError("prompt does not end with a User turn");
  auto it = keywords_.find(name);
  if (it == keywords_.end()) return "No.";
  std::string text = ToLowerAscii(turns.back().content);
  for (const std::string& w : it->second) {
    if (ContainsKeyword(text, w)) return "Yes.";
  }
  return "No.";
}

ReplayBackend::ReplayBackend(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw NotFound("cannot open replay file: " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (TrimView(line).empty()) continue;
    try {
      json j = json::parse(line);
      responses_[j.at("prompt_hash").get<std::string>()] = j.at("response").get<std::string>();
    } catch (const json::exception& e) {
      throw ParseError("replay line " + std::to_string(lineno) + ": " + e.what());
    }
  }
}

std::string ReplayBackend::Send(const std::vector<Turn>& turns) {
  Prompt p;
  p.turns = turns;
  std::string hash = p.Hash();
  auto it = responses_.find(hash);
  if (it == responses_.end()) throw BackendError("no recorded response for prompt " + hash);
  return it->second;
}

LiveBackend::LiveBackend(LiveBackendConfig config)
    : config_(std::move(config)), next_slot_(std::chrono::steady_clock::now()) {
  if (config_.endpoint.empty()) throw ConfigError("live backend needs an endpoint URL");
  if (config_.model.empty()) throw ConfigError("live backend needs a model name");
  if (config_.requests_per_second <= 0) throw ConfigError("requests_per_second must be positive");
  if (const char* t = std::getenv(config_.token_env.c_str())) token_ = t;
}

// Single-token bucket: each request takes the next free slot.
void LiveBackend::Pace() {
  auto interval = std::chrono::duration_cast<std::chrono::steady_clock::duration>(
      std::chrono::duration<double>(1.0 / config_.requests_per_second));
  std::chrono::steady_clock::time_point slot;
  {
    std::lock_guard lock(pace_mutex_);
    auto now = std::chrono::steady_clock::now();
    slot = std::max(now, next_slot_);
    next_slot_ = slot + interval;
  }
  std::this_thread::sleep_until(slot);
}

std::string LiveBackend::Send(const std::vector<Turn>& turns) {
  ordered_json body;
  body["model"] = config_.model;
  ordered_json messages = ordered_json::array();
  for (const Turn& t : turns) {
    std::string role = t.role == Role::kSystem ? "system" : t.role == Role::kUser ? "user" : "assistant";
    messages.push_back({{"role", role}, {"content", t.content}});
  }
  body["messages"] = messages;
  body["temperature"] = 0;
  const std::string payload = body.dump();

  httplib::Client client(config_.endpoint);
  client.set_connection_timeout(config_.timeout);
  client.set_read_timeout(config_.timeout);
  if (!token_.empty()) client.set_bearer_token_auth(token_);

  auto backoff = config_.initial_backoff;
  std::string last_error;
  for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
    Pace();
    auto res = client.Post(config_.path, payload, "application/json");
    if (res && res->status == 200) {
      try {
        json j = json::parse(res->body);
        return j.at("choices").at(0).at("message").at("content").get<std::string>();
      } catch (const json::exception& e) {
        throw BackendError(std::string("malformed chat response: ") + e.what());
      }
    }
    bool retryable = !res || res->status == 429 || res->status >= 500;
    last_error = res ? "HTTP " + std::to_string(res->status) : httplib::to_string(res.error());
    if (!retryable) break;
    if (attempt < config_.max_retries) {
      std::this_thread::sleep_for(backoff);
      backoff = std::min(backoff * 2, config_.max_backoff);
    }
  }
  throw BackendError("chat request failed: " + last_error);
}

ResponseCache::ResponseCache(std::string path) : path_(std::move(path)) {
  std::ifstream in(path_);
  if (!in) return;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (TrimView(line).empty()) continue;
    try {
      json j = json::parse(line);
      entries_[j.at("prompt_hash").get<std::string>()] = j.at("response").get<std::string>();
    } catch (const json::exception& e) {
      // A torn final line from an interrupted run is dropped.
      if (in.peek() == std::char_traits<char>::eof()) break;
      throw ParseError("response cache line " + std::to_string(lineno) + ": " + e.what());
    }
  }
}

std::optional<std::string> ResponseCache::Get(const std::string& prompt_hash) const {
  std::lock_guard lock(mutex_);
  auto it = entries_.find(prompt_hash);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void ResponseCache::Put(const CachedResponse& record) {
  ordered_json j;
  j["prompt_hash"] = record.prompt_hash;
  j["concept_id"] = record.concept_id;
  j["section_id"] = record.target.section_id;
  j["seq_index"] = record.target.index;
  j["response"] = record.response;
  std::lock_guard lock(mutex_);
  if (!entries_.emplace(record.prompt_hash, record.response).second) return;
  std::ofstream out(path_, std::ios::app);
  if (!out) throw BackendError("cannot append to response cache " + path_);
  out << j.dump() << '\n';
  out.flush();
}

std::size_t ResponseCache::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

}  // namespace rehab
