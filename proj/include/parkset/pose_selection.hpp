// Copyright 2026 Parkset Authors
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

#pragma once

#include "parkset/core_model.hpp"
#include "parkset/reachable_set.hpp"

namespace parkset {

struct CostWeights {
  double alpha1{1.0};   // heading change start -> intermediate [1/rad]
  double alpha2{0.2};   // distance start -> intermediate [1/m]
  double alpha3{0.2};   // distance intermediate -> goal [1/m]
  double alpha4{5.0};   // deviation from preferred orientation [1/rad]
  double psi_pref{0.0}; // preferred intermediate orientation [rad]

  void validate() const;
};

/// Weighted sum of heading change, travel distances, and orientation
/// preference. Angle terms use the wrapped absolute difference on [0, pi].
double cost(const Pose& start, const Pose& inter, const Pose& goal,
            const CostWeights& w);

struct NoFeasibleIntermediate : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Exhaustive argmin over the members of S_cfr; ties broken by lexicographic
/// (ix, iy, ipsi) order. Throws NoFeasibleIntermediate when the set is empty.
Pose select_intermediate(const ReachableSet& s_cfr, const Pose& start,
                         const Pose& goal, const CostWeights& w);

/// Same argmin but also reporting the winning grid index.
std::pair<Pose, GridIndex> select_intermediate_indexed(
    const ReachableSet& s_cfr, const Pose& start, const Pose& goal,
    const CostWeights& w);

}  // namespace parkset
