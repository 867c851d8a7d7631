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


// Binomial-deviance gradient boosting. Each stage fits a depth-limited
// regression tree to the residuals y - p by weighted squared error and sets
// each leaf to one Newton step, scaled by the learning rate.

#include <cmath>
#include <numeric>

#include "rehab/classifiers.h"
#include "trainers.h"

namespace rehab::internal {
namespace {

constexpr double kMinGain = 1e-12;

double Sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  double e = std::exp(z);
  return e / (1.0 + e);
}

double Deviance(const std::vector<double>& f, const std::vector<bool>& y,
                std::span<const double> sw) {
  double sum = 0.0, total = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    double z = f[i];
    double softplus = z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
    sum += sw[i] * (softplus - (y[i] ? z : 0.0));
    total += sw[i];
  }
  return 2.0 * sum / total;
}

class TreeBuilder {
 public:
  TreeBuilder(const SparseColumns& cols, std::span<const double> sw,
              const std::vector<double>& residual, const std::vector<double>& hess,
              int max_depth)
      : cols_(cols), sw_(sw), r_(residual), h_(hess), max_depth_(max_depth),
        node_of_(residual.size(), 0) {}

  // Builds the tree and records each sample's leaf in leaf_of.
  RegressionTree Build(std::vector<int>& leaf_of) {
    std::vector<int> all(r_.size());
    std::iota(all.begin(), all.end(), 0);
    Grow(all, 0);
    leaf_of = node_of_;
    return std::move(tree_);
  }

 private:
  int Grow(const std::vector<int>& samples, int depth) {
    int id = static_cast<int>(tree_.nodes.size());
    tree_.nodes.emplace_back();
    for (int s : samples) node_of_[s] = id;

    double w_sum = 0.0, r_sum = 0.0, h_sum = 0.0;
    for (int s : samples) {
      w_sum += sw_[s];
      r_sum += sw_[s] * r_[s];
      h_sum += sw_[s] * h_[s];
    }
    tree_.nodes[id].value = h_sum > 1e-150 ? r_sum / h_sum : 0.0;
    if (depth >= max_depth_ || samples.size() < 2) return id;

    // Best split by weighted squared error: maximise
    // R_L^2/W_L + R_R^2/W_R - R^2/W.
    const double parent = r_sum * r_sum / w_sum;
    double best_gain = kMinGain;
    int best_f = -1;
    double best_thr = 0.0;
    const int n_node = static_cast<int>(samples.size());
    for (int f = 0; f < static_cast<int>(cols_.columns.size()); ++f) {
      cells_.clear();
      for (const auto& c : cols_.columns[f]) {
        if (node_of_[c.sample] == id) cells_.push_back(c);
      }
      if (cells_.empty()) continue;
      double nz_w = 0.0, nz_r = 0.0;
      for (const auto& c : cells_) {
        nz_w += sw_[c.sample];
        nz_r += sw_[c.sample] * r_[c.sample];
      }
      double lw = w_sum - nz_w, lr = r_sum - nz_r;
      int left_count = n_node - static_cast<int>(cells_.size());
      auto consider = [&](double thr) {
        double rw = w_sum - lw, rr = r_sum - lr;
        if (left_count == 0 || left_count == n_node || lw <= 0 || rw <= 0) return;
        double gain = lr * lr / lw + rr * rr / rw - parent;
        if (gain > best_gain) {
          best_gain = gain;
          best_f = f;
          best_thr = thr;
        }
      };
      consider(cells_.front().value / 2.0);
      for (std::size_t k = 0; k < cells_.size(); ++k) {
        lw += sw_[cells_[k].sample];
        lr += sw_[cells_[k].sample] * r_[cells_[k].sample];
        ++left_count;
        if (k + 1 < cells_.size() && cells_[k + 1].value != cells_[k].value) {
          consider((cells_[k].value + cells_[k + 1].value) / 2.0);
        }
      }
    }
    if (best_f < 0) return id;

    std::vector<bool> goes_left(r_.size(), true);
    for (const auto& c : cols_.columns[best_f]) {
      if (node_of_[c.sample] == id && c.value > best_thr) goes_left[c.sample] = false;
    }
    std::vector<int> left, right;
    for (int s : samples) (goes_left[s] ? left : right).push_back(s);

    tree_.nodes[id].feature = best_f;
    tree_.nodes[id].threshold = best_thr;
    int l = Grow(left, depth + 1);
    int r = Grow(right, depth + 1);
    tree_.nodes[id].left = l;
    tree_.nodes[id].right = r;
    return id;
  }

  const SparseColumns& cols_;
  std::span<const double> sw_;
  const std::vector<double>& r_;
  const std::vector<double>& h_;
  int max_depth_;
  std::vector<int> node_of_;
  std::vector<SparseColumns::Cell> cells_;
  RegressionTree tree_;
};

}  // namespace

GradBoostParams TrainGradBoost(std::span<const FeatureVector> x,
                               const std::vector<bool>& y,
                               std::span<const double> sw, int dim,
                               const TrainConfig& config, TrainTrace* trace) {
  const std::size_t n = x.size();
  SparseColumns cols(x, dim);
  double pos_w = 0.0, neg_w = 0.0;
  for (std::size_t i = 0; i < n; ++i) (y[i] ? pos_w : neg_w) += sw[i];

  GradBoostParams out;
  out.init = std::log(pos_w / neg_w);
  out.learning_rate = config.gb_learning_rate;
  std::vector<double> f(n, out.init), residual(n), hess(n);
  if (trace) trace->deviance.push_back(Deviance(f, y, sw));

  std::vector<int> leaf_of;
  for (int m = 0; m < config.gb_estimators; ++m) {
    for (std::size_t i = 0; i < n; ++i) {
      double p = Sigmoid(f[i]);
      residual[i] = (y[i] ? 1.0 : 0.0) - p;
      hess[i] = p * (1.0 - p);
    }
    TreeBuilder builder(cols, sw, residual, hess, config.gb_max_depth);
    RegressionTree tree = builder.Build(leaf_of);
    for (std::size_t i = 0; i < n; ++i) {
      f[i] += out.learning_rate * tree.nodes[leaf_of[i]].value;
    }
    out.trees.push_back(std::move(tree));
    if (trace) trace->deviance.push_back(Deviance(f, y, sw));
  }
  return out;
}

}  // namespace rehab::internal
