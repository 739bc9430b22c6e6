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

#include "parkset/scenario.hpp"

#include <cstdio>
#include <fstream>

namespace parkset {

namespace {

double get_num(const nlohmann::json& j, const std::string& parent,
               const std::string& key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) {
    throw ScenarioError(parent + "." + key, "expected a number");
  }
  return j.at(key).get<double>();
}

int get_int(const nlohmann::json& j, const std::string& parent,
            const std::string& key, int fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number_integer()) {
    throw ScenarioError(parent + "." + key, "expected an integer");
  }
  return j.at(key).get<int>();
}

const nlohmann::json& get_obj(const nlohmann::json& j, const std::string& key,
                              bool required) {
  static const nlohmann::json empty = nlohmann::json::object();
  if (!j.contains(key)) {
    if (required) throw ScenarioError(key, "missing required object");
    return empty;
  }
  if (!j.at(key).is_object()) throw ScenarioError(key, "expected an object");
  return j.at(key);
}

}  // namespace

Scenario scenario_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ScenarioError("$", "scenario must be an object");
  const int version = get_int(j, "$", "schema_version", 1);
  if (version != 1) {
    throw ScenarioError("schema_version", "unsupported version");
  }
  Scenario s;
  s.name = j.value("name", "unnamed");

  const auto& lot = get_obj(j, "lot", true);
  s.lot.corridor_length_lcl = get_num(lot, "lot", "corridor_length", 12.0);
  s.lot.corridor_width_lcw = get_num(lot, "lot", "corridor_width", 7.0);
  s.lot.slot_length_lsl = get_num(lot, "lot", "slot_length", 5.5);
  s.lot.slot_width_lsw = get_num(lot, "lot", "slot_width", 2.9);
  if (lot.contains("obstacle_zones")) {
    if (!lot.at("obstacle_zones").is_array()) {
      throw ScenarioError("lot.obstacle_zones", "expected an array");
    }
    for (const auto& z : lot.at("obstacle_zones")) {
      Rect r;
      r.x_lo = get_num(z, "lot.obstacle_zones[]", "x_lo", 0.0);
      r.x_hi = get_num(z, "lot.obstacle_zones[]", "x_hi", 0.0);
      r.y_lo = get_num(z, "lot.obstacle_zones[]", "y_lo", 0.0);
      r.y_hi = get_num(z, "lot.obstacle_zones[]", "y_hi", 0.0);
      s.lot.obstacle_zones.push_back(r);
    }
  }

  const auto& veh = get_obj(j, "vehicle", true);
  s.vehicle.length_vl = get_num(veh, "vehicle", "length", 4.325);
  s.vehicle.width_vw = get_num(veh, "vehicle", "width", 1.890);
  s.vehicle.wheelbase_l = get_num(veh, "vehicle", "wheelbase", 2.630);
  s.vehicle.rear_overhang_lr = get_num(veh, "vehicle", "rear_overhang", 0.845);
  s.vehicle.max_steer = get_num(veh, "vehicle", "max_steer", 0.6);
  s.vehicle.max_steer_rate = get_num(veh, "vehicle", "max_steer_rate", 0.5);

  const auto& start = get_obj(j, "start_pose", true);
  s.start_pose.x = get_num(start, "start_pose", "x", 0.0);
  s.start_pose.y = get_num(start, "start_pose", "y", 0.0);
  s.start_pose.psi = wrap_angle(get_num(start, "start_pose", "psi", 0.0));

  s.ts = get_num(j, "$", "ts", 0.01);

  const auto& clo = get_obj(j, "clothoid", false);
  s.clothoid.towing_distance_Lv = get_num(clo, "clothoid", "towing_distance", 1.0);
  s.clothoid.reverse_speed = get_num(clo, "clothoid", "reverse_speed", 0.5);
  s.clothoid.eps_y = get_num(clo, "clothoid", "eps_y", 0.05);
  s.clothoid.eps_psi = get_num(clo, "clothoid", "eps_psi", 0.1);
  s.clothoid.max_steps = get_int(clo, "clothoid", "max_steps", 10000);

  const auto& grid = get_obj(j, "grid_counts", false);
  s.grid_counts.n_x = get_int(grid, "grid_counts", "n_x", 28);
  s.grid_counts.n_y = get_int(grid, "grid_counts", "n_y", 121);
  s.grid_counts.n_psi = get_int(grid, "grid_counts", "n_psi", 63);

  const auto& w = get_obj(j, "weights", false);
  s.weights.alpha1 = get_num(w, "weights", "alpha1", 1.0);
  s.weights.alpha2 = get_num(w, "weights", "alpha2", 0.2);
  s.weights.alpha3 = get_num(w, "weights", "alpha3", 0.2);
  s.weights.alpha4 = get_num(w, "weights", "alpha4", 5.0);
  s.weights.psi_pref = get_num(w, "weights", "psi_pref", 0.4);

  const auto& se = get_obj(j, "search", false);
  s.search.xy_cell = get_num(se, "search", "xy_cell", 0.2);
  s.search.psi_bins = get_int(se, "search", "psi_bins", 72);
  s.search.step_arc = get_num(se, "search", "step_arc", 0.5);
  s.search.steer_samples = get_int(se, "search", "steer_samples", 5);
  s.search.reverse_penalty = get_num(se, "search", "reverse_penalty", 2.0);
  s.search.switch_penalty = get_num(se, "search", "switch_penalty", 5.0);
  s.search.steer_penalty = get_num(se, "search", "steer_penalty", 5.0);
  s.search.goal_tol_xy = get_num(se, "search", "goal_tol_xy", 0.1);
  s.search.goal_tol_psi = get_num(se, "search", "goal_tol_psi", 0.05);
  s.search.steer_margin = get_num(se, "search", "steer_margin", 1.0);
  s.search.max_expansions = get_int(se, "search", "max_expansions", 200000);

  const auto& lon = get_obj(j, "longitudinal", false);
  s.longitudinal.nu = get_num(lon, "longitudinal", "nu", 0.5);
  s.longitudinal.tau = get_num(lon, "longitudinal", "tau", 0.2);
  s.longitudinal.v_max = get_num(lon, "longitudinal", "v_max", 0.5);
  s.longitudinal.kp = get_num(lon, "longitudinal", "kp", 2.0);
  s.longitudinal.kd = get_num(lon, "longitudinal", "kd", 0.1);

  const auto& g = get_obj(j, "gains", false);
  s.gains.k_y = get_num(g, "gains", "k_y", 0.6);
  s.gains.k_psi = get_num(g, "gains", "k_psi", 3.0);
  s.gains.k_d = get_num(g, "gains", "k_d", 0.15);

  const auto& d = get_obj(j, "disturbance", false);
  s.disturbance.bound_xy = get_num(d, "disturbance", "bound_xy", 0.001);
  s.disturbance.bound_psi = get_num(d, "disturbance", "bound_psi", 0.0005);
  s.disturbance.seed =
      static_cast<std::uint64_t>(get_int(d, "disturbance", "seed", 0));

  s.validate();
  return s;
}

void Scenario::validate() const {
  try {
    vehicle.validate();
  } catch (const std::invalid_argument& e) {
    throw ScenarioError("vehicle", e.what());
  }
  try {
    lot.validate(vehicle);
  } catch (const std::invalid_argument& e) {
    throw ScenarioError("lot", e.what());
  }
  try {
    clothoid.validate();
  } catch (const std::invalid_argument& e) {
    throw ScenarioError("clothoid", e.what());
  }
  try {
    weights.validate();
  } catch (const std::invalid_argument& e) {
    throw ScenarioError("weights", e.what());
  }
  try {
    search.validate();
  } catch (const std::invalid_argument& e) {
    throw ScenarioError("search", e.what());
  }
  try {
    longitudinal.validate(ts);
    gains.validate();
  } catch (const std::invalid_argument& e) {
    throw ScenarioError("longitudinal/gains", e.what());
  }
  if (!(ts > 0.0)) throw ScenarioError("ts", "must be positive");
  if (grid_counts.n_x < 2 || grid_counts.n_y < 2 || grid_counts.n_psi < 2) {
    throw ScenarioError("grid_counts", "counts must be >= 2");
  }
  if (disturbance.bound_xy < 0.0 || disturbance.bound_psi < 0.0) {
    throw ScenarioError("disturbance", "bounds must be non-negative");
  }
  // The grid construction also checks corridor feasibility.
  try {
    build_grid(lot, vehicle, grid_counts);
  } catch (const std::invalid_argument& e) {
    throw ScenarioError("lot", e.what());
  }
  const FreeSpace fs = build_free_space(lot, vehicle);
  if (!circle_centers_in_free_space(start_pose, vehicle, fs)) {
    throw ScenarioError("start_pose", "start pose is not collision-free");
  }
}

nlohmann::json Scenario::to_json() const {
  nlohmann::json zones = nlohmann::json::array();
  for (const Rect& r : lot.obstacle_zones) {
    zones.push_back({{"x_lo", r.x_lo},
                     {"x_hi", r.x_hi},
                     {"y_lo", r.y_lo},
                     {"y_hi", r.y_hi}});
  }
  return nlohmann::json{
      {"schema_version", 1},
      {"name", name},
      {"lot",
       {{"corridor_length", lot.corridor_length_lcl},
        {"corridor_width", lot.corridor_width_lcw},
        {"slot_length", lot.slot_length_lsl},
        {"slot_width", lot.slot_width_lsw},
        {"obstacle_zones", zones}}},
      {"vehicle",
       {{"length", vehicle.length_vl},
        {"width", vehicle.width_vw},
        {"wheelbase", vehicle.wheelbase_l},
        {"rear_overhang", vehicle.rear_overhang_lr},
        {"max_steer", vehicle.max_steer},
        {"max_steer_rate", vehicle.max_steer_rate}}},
      {"start_pose",
       {{"x", start_pose.x}, {"y", start_pose.y}, {"psi", start_pose.psi}}},
      {"ts", ts},
      {"clothoid",
       {{"towing_distance", clothoid.towing_distance_Lv},
        {"reverse_speed", clothoid.reverse_speed},
        {"eps_y", clothoid.eps_y},
        {"eps_psi", clothoid.eps_psi},
        {"max_steps", clothoid.max_steps}}},
      {"grid_counts",
       {{"n_x", grid_counts.n_x},
        {"n_y", grid_counts.n_y},
        {"n_psi", grid_counts.n_psi}}},
      {"weights",
       {{"alpha1", weights.alpha1},
        {"alpha2", weights.alpha2},
        {"alpha3", weights.alpha3},
        {"alpha4", weights.alpha4},
        {"psi_pref", weights.psi_pref}}},
      {"search",
       {{"xy_cell", search.xy_cell},
        {"psi_bins", search.psi_bins},
        {"step_arc", search.step_arc},
        {"steer_samples", search.steer_samples},
        {"reverse_penalty", search.reverse_penalty},
        {"switch_penalty", search.switch_penalty},
        {"steer_penalty", search.steer_penalty},
        {"goal_tol_xy", search.goal_tol_xy},
        {"goal_tol_psi", search.goal_tol_psi},
        {"steer_margin", search.steer_margin},
        {"max_expansions", search.max_expansions}}},
      {"longitudinal",
       {{"nu", longitudinal.nu},
        {"tau", longitudinal.tau},
        {"v_max", longitudinal.v_max},
        {"kp", longitudinal.kp},
        {"kd", longitudinal.kd}}},
      {"gains",
       {{"k_y", gains.k_y}, {"k_psi", gains.k_psi}, {"k_d", gains.k_d}}},
      {"disturbance",
       {{"bound_xy", disturbance.bound_xy},
        {"bound_psi", disturbance.bound_psi},
        {"seed", disturbance.seed}}}};
}

std::string Scenario::reachset_hash() const {
  nlohmann::json all = to_json();
  nlohmann::json relevant{{"lot", all.at("lot")},
                          {"vehicle", all.at("vehicle")},
                          {"clothoid", all.at("clothoid")},
                          {"grid_counts", all.at("grid_counts")},
                          {"ts", ts}};
  const std::string text = relevant.dump();
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a 64
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("$", "cannot open scenario file: " + path);
  nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded()) {
    throw ScenarioError("$", "scenario file is not valid JSON: " + path);
  }
  return scenario_from_json(j);
}

}  // namespace parkset
