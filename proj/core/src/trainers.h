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


// Per-kind trainers behind TrainClassifier. Inputs are already checked:
// x is nonempty, both classes are present and the sample weights are the
// balanced ones.

#ifndef REHAB_SRC_TRAINERS_H_
#define REHAB_SRC_TRAINERS_H_

#include <span>
#include <vector>

#include "rehab/classifiers.h"

namespace rehab::internal {

LogRegParams TrainLogReg(std::span<const FeatureVector> x, const std::vector<bool>& y,
                         std::span<const double> sw, int dim,
                         const TrainConfig& config, TrainTrace* trace);

SvmParams TrainSvm(std::span<const FeatureVector> x, const std::vector<bool>& y,
                   const ClassWeights& cw, const TrainConfig& config,
                   const KernelMatrix& kernel, TrainTrace* trace);

AdaBoostParams TrainAdaBoost(std::span<const FeatureVector> x,
                             const std::vector<bool>& y, std::span<const double> sw,
                             int dim, const TrainConfig& config, TrainTrace* trace);

GradBoostParams TrainGradBoost(std::span<const FeatureVector> x,
                               const std::vector<bool>& y,
                               std::span<const double> sw, int dim,
                               const TrainConfig& config, TrainTrace* trace);

// Column-major view of a sparse design matrix: for each feature, the
// (sample, value) pairs with nonzero value, sorted by value then sample.
struct SparseColumns {
  struct Cell {
    int sample;
    double value;
  };
  std::vector<std::vector<Cell>> columns;

  SparseColumns(std::span<const FeatureVector> x, int dim);
};

}  // namespace rehab::internal

#endif  // REHAB_SRC_TRAINERS_H_
