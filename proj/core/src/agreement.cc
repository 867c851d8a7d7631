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

#include <cstdint>

#include "rehab/error.h"
#include "rehab/goldstore.h"

namespace rehab {

double FleissKappa(const RatingTable& table) {
  const std::int64_t n_items = table.items();
  const std::int64_t raters = table.raters;
  if (raters < 2) throw ShapeError("Fleiss's kappa needs at least 2 raters");
  if (n_items < 1) throw ShapeError("Fleiss's kappa needs at least 1 item");
  const std::size_t k = table.counts[0].size();
  if (k == 0) throw ShapeError("rating table has no categories");

  std::vector<std::int64_t> column(k, 0);
  std::int64_t sum_sq = 0;
  for (std::int64_t i = 0; i < n_items; ++i) {
    const std::vector<int>& row = table.counts[i];
    if (row.size() != k) throw ShapeError("ragged rating table at item " + std::to_string(i));
    std::int64_t row_sum = 0;
    for (std::size_t j = 0; j < k; ++j) {
      if (row[j] < 0) throw ShapeError("negative count at item " + std::to_string(i));
      row_sum += row[j];
      sum_sq += static_cast<std::int64_t>(row[j]) * row[j];
      column[j] += row[j];
    }
    if (row_sum != raters) {
      throw ShapeError("item " + std::to_string(i) + " has " +
                       std::to_string(row_sum) + " ratings, expected " +
                       std::to_string(raters));
    }
  }

  const std::int64_t total = n_items * raters;
  // Mean per-item agreement, from integer sums so that perfect agreement is
  // exactly 1.
  const std::int64_t agree_num = sum_sq - total;
  const std::int64_t agree_den = total * (raters - 1);
  const bool perfect = agree_num == agree_den;

  for (std::int64_t c : column) {
    if (c == total) {
      // Every rating in one category: chance agreement is 1.
      if (perfect) return 1.0;
      throw DegenerateDistribution("all ratings fall in one category");
    }
  }
  if (perfect) return 1.0;

  double p_bar = static_cast<double>(agree_num) / static_cast<double>(agree_den);
  double p_e = 0.0;
  for (std::int64_t c : column) {
    double p = static_cast<double>(c) / static_cast<double>(total);
    p_e += p * p;
  }
  return (p_bar - p_e) / (1.0 - p_e);
}

RatingTable BuildAgreementTable(std::span<const GoldCorpus> annotators,
                                const Ontology& ontology) {
  if (annotators.size() < 2) throw ShapeError("agreement needs at least 2 annotators");
  std::vector<LabelMap> maps;
  for (const GoldCorpus& c : annotators) maps.push_back(SequenceTargets(c, ontology));
  for (std::size_t a = 1; a < maps.size(); ++a) {
    if (maps[a].size() != maps[0].size()) {
      throw ShapeError("annotators labelled different sequence sets");
    }
    for (auto it0 = maps[0].begin(), it = maps[a].begin(); it0 != maps[0].end();
         ++it0, ++it) {
      if (it0->first != it->first) {
        throw ShapeError("annotators labelled different sequence sets");
      }
    }
  }

  RatingTable table;
  table.raters = static_cast<int>(maps.size());
  std::vector<std::string> concepts = ontology.BinaryConceptIds();
  for (const auto& [ref, unused] : maps[0]) {
    for (const std::string& c : concepts) {
      int yes = 0;
      for (const LabelMap& m : maps) yes += m.at(ref).count(c) ? 1 : 0;
      table.counts.push_back({yes, table.raters - yes});
    }
  }
  return table;
}

}  // namespace rehab
