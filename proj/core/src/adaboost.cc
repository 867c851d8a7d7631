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


// Binary SAMME over exhaustive-threshold decision stumps.

#include <algorithm>
#include <cmath>

#include "rehab/classifiers.h"
#include "trainers.h"

namespace rehab {

namespace {

double FeatureValue(const FeatureVector& x, int feature) {
  auto it = std::lower_bound(
      x.entries.begin(), x.entries.end(), feature,
      [](const FeatureEntry& e, int f) { return e.index < f; });
  return it != x.entries.end() && it->index == feature ? it->count : 0.0;
}

}  // namespace

double Stump::Predict(const FeatureVector& x) const {
  return FeatureValue(x, feature) <= threshold ? left : -left;
}

double RegressionTree::Predict(const FeatureVector& x) const {
  int node = 0;
  while (nodes[node].feature >= 0) {
    node = FeatureValue(x, nodes[node].feature) <= nodes[node].threshold
               ? nodes[node].left
               : nodes[node].right;
  }
  return nodes[node].value;
}

namespace internal {
namespace {

struct StumpFit {
  Stump stump;
  double error = 1.0;
};

// Lowest weighted-error stump. Thresholds sit halfway between consecutive
// distinct values; ties keep the first found (feature, then threshold).
StumpFit BestStump(const SparseColumns& cols, const std::vector<bool>& y,
                   const std::vector<double>& d, int n) {
  double pos_total = 0.0, neg_total = 0.0;
  for (int i = 0; i < n; ++i) (y[i] ? pos_total : neg_total) += d[i];

  StumpFit best;
  auto consider = [&](int f, double thr, double left_pos, double left_neg) {
    double err_plus = left_neg + (pos_total - left_pos);
    double err_minus = left_pos + (neg_total - left_neg);
    if (err_plus < best.error) best = {{f, thr, 1.0, 0.0}, err_plus};
    if (err_minus < best.error) best = {{f, thr, -1.0, 0.0}, err_minus};
  };

  for (int f = 0; f < static_cast<int>(cols.columns.size()); ++f) {
    const auto& col = cols.columns[f];
    if (col.empty()) continue;
    double nz_pos = 0.0, nz_neg = 0.0;
    for (const auto& c : col) (y[c.sample] ? nz_pos : nz_neg) += d[c.sample];
    double left_pos = pos_total - nz_pos;
    double left_neg = neg_total - nz_neg;
    if (static_cast<int>(col.size()) < n) consider(f, col.front().value / 2.0, left_pos, left_neg);
    for (std::size_t k = 0; k < col.size(); ++k) {
      (y[col[k].sample] ? left_pos : left_neg) += d[col[k].sample];
      bool boundary = k + 1 < col.size() && col[k + 1].value != col[k].value;
      if (boundary) consider(f, (col[k].value + col[k + 1].value) / 2.0, left_pos, left_neg);
    }
  }
  return best;
}

}  // namespace

AdaBoostParams TrainAdaBoost(std::span<const FeatureVector> x,
                             const std::vector<bool>& y, std::span<const double> sw,
                             int dim, const TrainConfig& config, TrainTrace* trace) {
  const int n = static_cast<int>(x.size());
  SparseColumns cols(x, dim);
  std::vector<double> d(sw.begin(), sw.end());
  double total = 0.0;
  for (double v : d) total += v;
  for (double& v : d) v /= total;

  AdaBoostParams out;
  double alpha_sum = 0.0;
  for (int m = 0; m < config.ada_estimators; ++m) {
    StumpFit fit = BestStump(cols, y, d, n);
    if (fit.error >= 0.5) break;
    if (trace) trace->stump_errors.push_back(fit.error);
    if (fit.error <= 0.0) {
      // A perfect stump ends training; outweigh the earlier votes so the
      // ensemble reproduces it.
      fit.stump.alpha = alpha_sum + 1.0;
      out.stumps.push_back(fit.stump);
      break;
    }
    fit.stump.alpha = std::log((1.0 - fit.error) / fit.error);
    alpha_sum += fit.stump.alpha;
    out.stumps.push_back(fit.stump);

    double norm = 0.0;
    for (int i = 0; i < n; ++i) {
      bool pred = fit.stump.Predict(x[i]) > 0;
      if (pred != y[i]) d[i] *= std::exp(fit.stump.alpha);
      norm += d[i];
    }
    for (double& v : d) v /= norm;
  }
  return out;
}

}  // namespace internal
}  // namespace rehab
