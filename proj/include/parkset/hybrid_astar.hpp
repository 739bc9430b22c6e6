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

#include <stdexcept>
#include <string>
#include <vector>

#include "parkset/core_model.hpp"
#include "parkset/environment.hpp"

namespace parkset {

struct SearchConfig {
  double xy_cell{0.2};        // closed-set cell size [m]
  int psi_bins{72};           // heading discretization
  double step_arc{0.5};       // primitive arc length [m]
  int steer_samples{5};       // steering values per direction
  double reverse_penalty{2.0};
  double switch_penalty{5.0};
  double steer_penalty{5.0};
  double goal_tol_xy{0.1};    // [m]
  double goal_tol_psi{0.05};  // [rad]
  double steer_margin{1.0};   // primitive steering span as a max_steer fraction
  int max_expansions{200000};

  void validate() const;
};

/// Kinematically replayable path: each step advances step_length along a
/// constant-steering arc in the recorded direction (+1 forward, -1 reverse).
struct GlobalPath {
  std::vector<Pose> states;
  std::vector<double> steering;  // one per step
  std::vector<int> direction;    // one per step
  double step_length{0.0};       // [m]
  int gear_shift_count{0};

  double length() const {
    return step_length * static_cast<double>(steering.size());
  }
};

struct NoPathError : std::runtime_error {
  NoPathError(const std::string& msg, int expansions_done)
      : std::runtime_error(msg), expansions(expansions_done) {}
  int expansions;
};

/// Hybrid-A* over (x, y, psi) with constant-steering arc primitives in both
/// directions. Deterministic: priority ties resolve by insertion order.
GlobalPath plan_global(const Pose& start, const Pose& target,
                       const FreeSpace& fs, const VehicleParams& params,
                       const SearchConfig& cfg);

/// Laplacian smoothing of a planned path, for use as a tracking reference.
/// The raw primitive chain switches between extreme steering values every
/// step_arc, which a rate-limited steering actuator cannot follow. Gear
/// segments are smoothed independently with their endpoints fixed; any
/// point update that would leave the free space is skipped. Interior
/// headings and per-step steering are recomputed from the smoothed
/// geometry, so the result is no longer an arc-replayable chain. Falls
/// back to the input if the smoothed path is not collision-free.
GlobalPath smooth_global_path(const GlobalPath& path, const FreeSpace& fs,
                              const VehicleParams& params,
                              int iterations = 200,
                              double weight_smooth = 0.4,
                              double weight_anchor = 0.05);

}  // namespace parkset
