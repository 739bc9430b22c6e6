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

#include <string>

#include <nlohmann/json.hpp>

#include "parkset/clothoid.hpp"
#include "parkset/core_model.hpp"
#include "parkset/environment.hpp"
#include "parkset/hybrid_astar.hpp"
#include "parkset/pose_selection.hpp"
#include "parkset/reachable_set.hpp"
#include "parkset/tracking_sim.hpp"

namespace parkset {

/// Everything one run needs, loaded from a versioned JSON file with
/// documented defaults for all tuning fields.
struct Scenario {
  std::string name;
  ParkingLot lot;
  VehicleParams vehicle;
  Pose start_pose;
  ClothoidConfig clothoid;
  GridCounts grid_counts;
  CostWeights weights;
  SearchConfig search;
  LongitudinalConfig longitudinal;
  LateralGains gains;
  DisturbanceConfig disturbance;
  double ts{0.01};

  void validate() const;
  /// Fully resolved configuration echo (the run_meta payload).
  nlohmann::json to_json() const;
  /// FNV-1a hash of the fields that determine the reachable set.
  std::string reachset_hash() const;
};

struct ScenarioError : std::runtime_error {
  ScenarioError(const std::string& field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_path(field) {}
  std::string field_path;
};

Scenario scenario_from_json(const nlohmann::json& j);
Scenario load_scenario(const std::string& path);

}  // namespace parkset
