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

#include <optional>
#include <string>

#include "parkset/scenario.hpp"

namespace parkset {

enum class PipelineMode { kReachset, kPlan, kSimulate };

struct PipelineOptions {
  std::string out_dir{"out"};
  std::string cache_dir;  // empty: no cache reuse, sets always recomputed
  std::optional<std::uint64_t> seed;
  std::optional<GridCounts> grid;
  int threads{0};
  bool write_artifacts{true};
};

struct PipelineResult {
  GridSpec grid;
  ReachableSet s_r;
  ReachableSet s_cfr;
  // plan stage
  bool has_plan{false};
  Pose intermediate;
  GridIndex intermediate_index;
  GlobalPath global;
  LocalPath local;
  int total_gear_shifts{0};
  // simulate stage
  bool has_sim{false};
  Trajectory trajectory;
  TrackingMetrics metrics;
};

/// Reachable set -> intermediate pose -> Hybrid-A* approach -> clothoid
/// reverse -> closed-loop tracking, stopping after the requested stage.
/// Stage failures surface as NoFeasibleIntermediate, NoPathError, and
/// TrackingFailure; the CLI maps them to exit codes 2, 3, and 4.
PipelineResult run_pipeline(const Scenario& scenario, PipelineMode mode,
                            const PipelineOptions& options = {});

/// Combined gear-shift count of a planned maneuver, including the shift
/// into the final reverse clothoid segment when the approach ends forward.
int count_total_gear_shifts(const GlobalPath& global, const LocalPath& local);

void write_trajectory_csv(const std::string& path, const Trajectory& traj);

}  // namespace parkset
