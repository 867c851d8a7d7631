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
#include <set>

#include "rehab/classifiers.h"
#include "rehab/error.h"
#include "rehab/text.h"
#include "trainers.h"

namespace rehab {

std::vector<std::string> Tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!IsAsciiAlnum(text[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && IsAsciiAlnum(text[j])) ++j;
    out.push_back(ToLowerAscii(text.substr(i, j - i)));
    i = j;
  }
  return out;
}

double FeatureVector::Dot(const FeatureVector& other) const {
  double sum = 0.0;
  auto a = entries.begin();
  auto b = other.entries.begin();
  while (a != entries.end() && b != other.entries.end()) {
    if (a->index < b->index) {
      ++a;
    } else if (b->index < a->index) {
      ++b;
    } else {
      sum += static_cast<double>(a->count) * b->count;
      ++a;
      ++b;
    }
  }
  return sum;
}

double FeatureVector::Dot(std::span<const double> dense) const {
  double sum = 0.0;
  for (const FeatureEntry& e : entries) sum += e.count * dense[e.index];
  return sum;
}

Vocabulary::Vocabulary(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {
  std::sort(tokens_.begin(), tokens_.end());
  tokens_.erase(std::unique(tokens_.begin(), tokens_.end()), tokens_.end());
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    index_.emplace(tokens_[i], static_cast<int>(i));
  }
}

int Vocabulary::IndexOf(std::string_view token) const {
  auto it = index_.find(token);
  return it == index_.end() ? -1 : it->second;
}

Vocabulary BuildVocabulary(std::span<const std::string> texts) {
  std::set<std::string> tokens;
  for (const std::string& t : texts) {
    for (std::string& tok : Tokenize(t)) tokens.insert(std::move(tok));
  }
  if (tokens.empty()) throw EmptyCorpus("no tokens in training texts");
  return Vocabulary({tokens.begin(), tokens.end()});
}

Vocabulary BuildVocabulary(std::span<const Sequence> sequences) {
  std::vector<std::string> texts;
  texts.reserve(sequences.size());
  for (const Sequence& s : sequences) texts.push_back(s.text);
  return BuildVocabulary(texts);
}

FeatureVector Vectorize(const Vocabulary& vocab, std::string_view text) {
  std::map<int, int> counts;
  for (const std::string& tok : Tokenize(text)) {
    int idx = vocab.IndexOf(tok);
    if (idx >= 0) ++counts[idx];
  }
  FeatureVector v;
  v.entries.reserve(counts.size());
  for (auto [idx, n] : counts) v.entries.push_back({idx, n});
  return v;
}

ClassWeights BalancedClassWeights(const std::vector<bool>& y) {
  const auto n = static_cast<double>(y.size());
  const auto pos = static_cast<double>(std::count(y.begin(), y.end(), true));
  const double neg = n - pos;
  if (pos == 0 || neg == 0) throw SingleClass("labels contain a single class");
  return {n / (2.0 * pos), n / (2.0 * neg)};
}

std::vector<double> BalancedSampleWeights(const std::vector<bool>& y) {
  ClassWeights w = BalancedClassWeights(y);
  std::vector<double> out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = y[i] ? w.positive : w.negative;
  return out;
}

double PolyKernel(const FeatureVector& u, const FeatureVector& v, double gamma,
                  double coef0, int degree) {
  double base = gamma * u.Dot(v) + coef0;
  double out = 1.0;
  for (int d = 0; d < degree; ++d) out *= base;
  return out;
}

KernelMatrix::KernelMatrix(std::span<const FeatureVector> x, const TrainConfig& config)
    : n_(static_cast<int>(x.size())),
      k_(static_cast<std::size_t>(n_) * n_) {
  for (int i = 0; i < n_; ++i) {
    for (int j = i; j < n_; ++j) {
      double v = PolyKernel(x[i], x[j], config.svm_gamma, config.svm_coef0,
                            config.svm_degree);
      k_[static_cast<std::size_t>(i) * n_ + j] = v;
      k_[static_cast<std::size_t>(j) * n_ + i] = v;
    }
  }
}

namespace internal {

SparseColumns::SparseColumns(std::span<const FeatureVector> x, int dim)
    : columns(static_cast<std::size_t>(dim)) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (const FeatureEntry& e : x[i].entries) {
      columns[e.index].push_back({static_cast<int>(i), static_cast<double>(e.count)});
    }
  }
  for (auto& col : columns) {
    std::stable_sort(col.begin(), col.end(),
                     [](const Cell& a, const Cell& b) { return a.value < b.value; });
  }
}

}  // namespace internal
}  // namespace rehab
