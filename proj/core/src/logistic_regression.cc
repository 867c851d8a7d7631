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
#include <cmath>

#include "rehab/classifiers.h"
#include "trainers.h"

namespace rehab {
namespace {

// Weighted log-loss summed over samples; fills grad (same layout as
// params) when non-null.
double LossAndGradient(std::span<const FeatureVector> x, const std::vector<bool>& y,
                       std::span<const double> sw, std::span<const double> params,
                       std::vector<double>* grad) {
  const std::size_t dim = params.size() - 1;
  const double bias = params[dim];
  std::span<const double> w = params.first(dim);
  double loss = 0.0;
  if (grad) grad->assign(params.size(), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double z = x[i].Dot(w) + bias;
    const double t = y[i] ? 1.0 : 0.0;
    // One exponential serves both the softplus and the sigmoid.
    const double e = std::exp(-std::abs(z));
    const double softplus = std::max(z, 0.0) + std::log1p(e);
    loss += sw[i] * (softplus - t * z);
    if (grad) {
      const double p = z >= 0 ? 1.0 / (1.0 + e) : e / (1.0 + e);
      const double r = sw[i] * (p - t);
      for (const FeatureEntry& f : x[i].entries) (*grad)[f.index] += r * f.count;
      (*grad)[dim] += r;
    }
  }
  return loss;
}

}  // namespace

double LogisticLoss(std::span<const FeatureVector> x, const std::vector<bool>& y,
                    std::span<const double> sample_weight,
                    std::span<const double> params) {
  return LossAndGradient(x, y, sample_weight, params, nullptr);
}

std::vector<double> LogisticGradient(std::span<const FeatureVector> x,
                                     const std::vector<bool>& y,
                                     std::span<const double> sample_weight,
                                     std::span<const double> params) {
  std::vector<double> grad;
  LossAndGradient(x, y, sample_weight, params, &grad);
  return grad;
}

namespace internal {

LogRegParams TrainLogReg(std::span<const FeatureVector> x, const std::vector<bool>& y,
                         std::span<const double> sw, int dim,
                         const TrainConfig& config, TrainTrace* trace) {
  std::vector<double> params(static_cast<std::size_t>(dim) + 1, 0.0);
  std::vector<double> grad;
  double loss = LossAndGradient(x, y, sw, params, &grad);
  if (trace) trace->loss.push_back(loss);
  int epoch = 0;
  for (; epoch < config.max_epochs; ++epoch) {
    for (std::size_t k = 0; k < params.size(); ++k) params[k] -= config.learning_rate * grad[k];
    double next = LossAndGradient(x, y, sw, params, &grad);
    if (trace) trace->loss.push_back(next);
    double delta = loss - next;
    loss = next;
    if (std::abs(delta) < config.tolerance) {
      ++epoch;
      break;
    }
  }
  if (trace) trace->epochs = epoch;
  LogRegParams out;
  out.bias = params.back();
  params.pop_back();
  out.weights = std::move(params);
  return out;
}

}  // namespace internal
}  // namespace rehab
