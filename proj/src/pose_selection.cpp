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

#include "parkset/pose_selection.hpp"

#include <cmath>

namespace parkset {

void CostWeights::validate() const {
  if (alpha1 < 0.0 || alpha2 < 0.0 || alpha3 < 0.0 || alpha4 < 0.0) {
    throw std::invalid_argument("cost weights must be non-negative");
  }
  if (alpha1 == 0.0 && alpha2 == 0.0 && alpha3 == 0.0 && alpha4 == 0.0) {
    throw std::invalid_argument("at least one cost weight must be positive");
  }
}

double cost(const Pose& start, const Pose& inter, const Pose& goal,
            const CostWeights& w) {
  const double j1 = angle_distance(start.psi, inter.psi);
  const double j2 = std::hypot(start.x - inter.x, start.y - inter.y);
  const double j3 = std::hypot(goal.x - inter.x, goal.y - inter.y);
  const double j4 = angle_distance(w.psi_pref, inter.psi);
  return w.alpha1 * j1 + w.alpha2 * j2 + w.alpha3 * j3 + w.alpha4 * j4;
}

std::pair<Pose, GridIndex> select_intermediate_indexed(
    const ReachableSet& s_cfr, const Pose& start, const Pose& goal,
    const CostWeights& w) {
  w.validate();
  bool found = false;
  double best_cost = 0.0;
  GridIndex best_idx;
  Pose best_pose;
  // Members are visited in lexicographic index order, so keeping the first
  // strict improvement implements the tie-break rule.
  for (const GridIndex& idx : s_cfr.members()) {
    const Pose p = s_cfr.pose_at(idx);
    const double c = cost(start, p, goal, w);
    if (!found || c < best_cost) {
      found = true;
      best_cost = c;
      best_idx = idx;
      best_pose = p;
    }
  }
  if (!found) {
    throw NoFeasibleIntermediate(
        "no feasible intermediate pose: collision-free reachable set is empty");
  }
  return {best_pose, best_idx};
}

Pose select_intermediate(const ReachableSet& s_cfr, const Pose& start,
                         const Pose& goal, const CostWeights& w) {
  return select_intermediate_indexed(s_cfr, start, goal, w).first;
}

}  // namespace parkset
