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


// Soft-margin SVM dual solved by SMO with second-order working set
// selection, following the libsvm solver. Class weights scale the box
// bound per sample.

#include <algorithm>
#include <cmath>
#include <limits>

#include "rehab/classifiers.h"
#include "trainers.h"

namespace rehab::internal {
namespace {

constexpr double kTau = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

SvmParams TrainSvm(std::span<const FeatureVector> x, const std::vector<bool>& labels,
                   const ClassWeights& cw, const TrainConfig& config,
                   const KernelMatrix& kernel, TrainTrace* trace) {
  const int n = static_cast<int>(x.size());
  std::vector<double> y(n), cap(n), alpha(n, 0.0), grad(n, -1.0);
  for (int i = 0; i < n; ++i) {
    y[i] = labels[i] ? 1.0 : -1.0;
    cap[i] = config.svm_c * (labels[i] ? cw.positive : cw.negative);
  }
  auto in_up = [&](int t) {
    return (y[t] > 0 && alpha[t] < cap[t]) || (y[t] < 0 && alpha[t] > 0);
  };
  auto in_low = [&](int t) {
    return (y[t] > 0 && alpha[t] > 0) || (y[t] < 0 && alpha[t] < cap[t]);
  };

  int iter = 0;
  double gap = kInf;
  bool converged = false;
  while (iter < config.svm_max_iter) {
    double gmax = -kInf;
    int i = -1;
    for (int t = 0; t < n; ++t) {
      if (in_up(t) && -y[t] * grad[t] > gmax) {
        gmax = -y[t] * grad[t];
        i = t;
      }
    }
    double gmin = kInf;
    int j = -1;
    double best = kInf;
    for (int t = 0; t < n; ++t) {
      if (!in_low(t)) continue;
      double v = -y[t] * grad[t];
      gmin = std::min(gmin, v);
      if (i < 0) continue;
      double b = gmax - v;
      if (b > 0) {
        double a = kernel(i, i) + kernel(t, t) - 2.0 * kernel(i, t);
        if (a <= 0) a = kTau;
        double obj = -(b * b) / a;
        if (obj < best) {
          best = obj;
          j = t;
        }
      }
    }
    gap = gmax - gmin;
    if (i < 0 || j < 0 || gap < config.svm_eps) {
      converged = true;
      break;
    }
    ++iter;

    const double kij = kernel(i, j);
    const double old_ai = alpha[i];
    const double old_aj = alpha[j];
    const double ci = cap[i];
    const double cj = cap[j];
    if (y[i] != y[j]) {
      double quad = kernel(i, i) + kernel(j, j) - 2.0 * kij;
      if (quad <= 0) quad = kTau;
      double delta = (-grad[i] - grad[j]) / quad;
      double diff = alpha[i] - alpha[j];
      alpha[i] += delta;
      alpha[j] += delta;
      if (diff > 0) {
        if (alpha[j] < 0) {
          alpha[j] = 0;
          alpha[i] = diff;
        }
      } else if (alpha[i] < 0) {
        alpha[i] = 0;
        alpha[j] = -diff;
      }
      if (diff > ci - cj) {
        if (alpha[i] > ci) {
          alpha[i] = ci;
          alpha[j] = ci - diff;
        }
      } else if (alpha[j] > cj) {
        alpha[j] = cj;
        alpha[i] = cj + diff;
      }
    } else {
      double quad = kernel(i, i) + kernel(j, j) - 2.0 * kij;
      if (quad <= 0) quad = kTau;
      double delta = (grad[i] - grad[j]) / quad;
      double sum = alpha[i] + alpha[j];
      alpha[i] -= delta;
      alpha[j] += delta;
      if (sum > ci) {
        if (alpha[i] > ci) {
          alpha[i] = ci;
          alpha[j] = sum - ci;
        }
      } else if (alpha[j] < 0) {
        alpha[j] = 0;
        alpha[i] = sum;
      }
      if (sum > cj) {
        if (alpha[j] > cj) {
          alpha[j] = cj;
          alpha[i] = sum - cj;
        }
      } else if (alpha[i] < 0) {
        alpha[i] = 0;
        alpha[j] = sum;
      }
    }
    const double dai = alpha[i] - old_ai;
    const double daj = alpha[j] - old_aj;
    for (int t = 0; t < n; ++t) {
      grad[t] += y[t] * (y[i] * kernel(t, i) * dai + y[j] * kernel(t, j) * daj);
    }
  }

  // Offset: average y*grad over free vectors, else the midpoint of the
  // feasible interval.
  double ub = kInf, lb = -kInf, sum_free = 0.0;
  int n_free = 0;
  for (int t = 0; t < n; ++t) {
    double yg = y[t] * grad[t];
    if (alpha[t] >= cap[t]) {
      if (y[t] < 0) ub = std::min(ub, yg); else lb = std::max(lb, yg);
    } else if (alpha[t] <= 0) {
      if (y[t] > 0) ub = std::min(ub, yg); else lb = std::max(lb, yg);
    } else {
      ++n_free;
      sum_free += yg;
    }
  }
  double rho = n_free > 0 ? sum_free / n_free : (ub + lb) / 2.0;

  SvmParams out;
  out.gamma = config.svm_gamma;
  out.coef0 = config.svm_coef0;
  out.degree = config.svm_degree;
  out.bias = -rho;
  for (int t = 0; t < n; ++t) {
    if (alpha[t] > 0) {
      out.support.push_back(x[t]);
      out.coef.push_back(y[t] * alpha[t]);
    }
  }
  out.kkt_residual = std::max(0.0, gap);
  out.converged = converged && out.kkt_residual < config.kkt_tol;
  if (trace) {
    trace->svm_iterations = iter;
    trace->kkt_residual = out.kkt_residual;
    trace->converged = out.converged;
  }
  return out;
}

}  // namespace rehab::internal
