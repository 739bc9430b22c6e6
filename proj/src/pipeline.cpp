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

#include "parkset/pipeline.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "parkset/pose_selection.hpp"
#include "parkset/svg.hpp"

namespace parkset {

namespace fs_std = std::filesystem;

namespace {

std::string fmt9(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

void write_run_meta(const std::string& out_dir, const Scenario& scn) {
  nlohmann::json meta{{"scenario", scn.to_json()},
                      {"reachset_hash", scn.reachset_hash()}};
  std::ofstream out(out_dir + "/run_meta.json");
  out << meta.dump(2) << '\n';
}

void draw_lot(SvgCanvas& canvas, const Scenario& scn) {
  const Rect bb = scn.lot.bounding_box(scn.vehicle);
  canvas.rect(bb.x_lo, bb.y_lo, bb.x_hi, bb.y_hi, "#f2f2f2", "black");
  // Wall strips flanking the slot.
  const double half_slot = scn.lot.slot_width_lsw / 2.0;
  const double cx_lo = scn.lot.corridor_x_lo(scn.vehicle);
  canvas.rect(bb.x_lo, half_slot, cx_lo, bb.y_hi, "#b0b0b0");
  canvas.rect(bb.x_lo, bb.y_lo, cx_lo, -half_slot, "#b0b0b0");
  for (const Rect& r : scn.lot.obstacle_zones) {
    canvas.rect(r.x_lo, r.y_lo, r.x_hi, r.y_hi, "#c591e8");
  }
}

void emit_reachset_svgs(const std::string& out_dir, const Scenario& scn,
                        const ReachableSet& s_r, const ReachableSet& s_cfr) {
  const Rect bb = scn.lot.bounding_box(scn.vehicle);
  {
    // 2-D projection over psi: red = reachable, green = collision-free.
    SvgCanvas canvas(bb.x_lo - 0.5, bb.x_hi + 0.5, bb.y_lo - 0.5, bb.y_hi + 0.5);
    draw_lot(canvas, scn);
    const GridSpec& spec = s_r.spec();
    for (int ix = 0; ix < spec.n_x; ++ix) {
      for (int iy = 0; iy < spec.n_y; ++iy) {
        bool any_r = false;
        bool any_cfr = false;
        for (int ipsi = 0; ipsi < spec.n_psi; ++ipsi) {
          const GridIndex idx{ix, iy, ipsi};
          any_r = any_r || s_r.contains(idx);
          any_cfr = any_cfr || s_cfr.contains(idx);
        }
        if (any_cfr) {
          canvas.circle(spec.x_at(ix), spec.y_at(iy), 2.0, "green");
        } else if (any_r) {
          canvas.circle(spec.x_at(ix), spec.y_at(iy), 2.0, "red");
        }
      }
    }
    canvas.save(out_dir + "/reachset_2d.svg");
  }
  {
    // Oblique 3-D view: psi offsets each point along both axes.
    SvgCanvas canvas(bb.x_lo - 1.5, bb.x_hi + 1.5, bb.y_lo - 1.5, bb.y_hi + 1.5);
    const GridSpec& spec = s_r.spec();
    for (const GridIndex& idx : s_r.members()) {
      const Pose p = s_r.pose_at(idx);
      const double ox = p.x + 0.35 * p.psi;
      const double oy = p.y + 0.55 * p.psi;
      canvas.circle(ox, oy, 1.2, s_cfr.contains(idx) ? "green" : "red");
    }
    canvas.save(out_dir + "/reachset_3d.svg");
  }
}

void write_path_csv(const std::string& path, const std::vector<Pose>& states,
                    const std::vector<double>& steering,
                    const std::vector<int>& direction) {
  std::ofstream out(path);
  out << "x,y,psi,delta,gear\n";
  for (std::size_t i = 0; i < states.size(); ++i) {
    const double steer = i < steering.size() ? steering[i] : 0.0;
    const int dir = i < direction.size() ? direction[i] : 0;
    out << fmt9(states[i].x) << ',' << fmt9(states[i].y) << ','
        << fmt9(states[i].psi) << ',' << fmt9(steer) << ',' << dir << '\n';
  }
}

void emit_plan_artifacts(const std::string& out_dir, const Scenario& scn,
                         const PipelineResult& result) {
  write_path_csv(out_dir + "/path_global.csv", result.global.states,
                 result.global.steering, result.global.direction);
  std::vector<int> rev(result.local.steer_profile.size(), -1);
  write_path_csv(out_dir + "/path_clothoid.csv", result.local.states,
                 result.local.steer_profile, rev);

  nlohmann::json plan{
      {"intermediate_pose",
       {{"x", result.intermediate.x},
        {"y", result.intermediate.y},
        {"psi", result.intermediate.psi}}},
      {"intermediate_index",
       {{"ix", result.intermediate_index.ix},
        {"iy", result.intermediate_index.iy},
        {"ipsi", result.intermediate_index.ipsi}}},
      {"global_path_length", result.global.length()},
      {"global_gear_shifts", result.global.gear_shift_count},
      {"total_gear_shifts", result.total_gear_shifts},
      {"clothoid_reached_goal", result.local.reached_goal},
      {"clothoid_collision_free", result.local.collision_free}};
  std::ofstream out(out_dir + "/plan.json");
  out << plan.dump(2) << '\n';

  const Rect bb = scn.lot.bounding_box(scn.vehicle);
  SvgCanvas canvas(bb.x_lo - 0.5, bb.x_hi + 0.5, bb.y_lo - 0.5, bb.y_hi + 0.5);
  draw_lot(canvas, scn);
  std::vector<std::pair<double, double>> pts;
  for (const Pose& p : result.global.states) pts.emplace_back(p.x, p.y);
  canvas.polyline(pts, "blue", 2.0);
  pts.clear();
  for (const Pose& p : result.local.states) pts.emplace_back(p.x, p.y);
  canvas.polyline(pts, "orange", 2.0);
  canvas.circle(scn.start_pose.x, scn.start_pose.y, 4.0, "black");
  canvas.circle(result.intermediate.x, result.intermediate.y, 4.0, "blue");
  canvas.circle(0.0, 0.0, 4.0, "green");
  canvas.save(out_dir + "/plan.svg");
}

void emit_sim_artifacts(const std::string& out_dir, const Scenario& scn,
                        const PipelineResult& result) {
  write_trajectory_csv(out_dir + "/trajectory.csv", result.trajectory);

  const double width_7m = 6.5;
  nlohmann::json metrics{
      {"rmse_lateral", result.metrics.rmse_lateral},
      {"rmse_heading", result.metrics.rmse_heading},
      {"max_err_lateral", result.metrics.max_err_lateral},
      {"max_err_heading", result.metrics.max_err_heading},
      {"gear_shift_count", result.metrics.gear_shift_count},
      {"published_reference",
       {{"case", scn.lot.corridor_width_lcw >= width_7m ? "7m" : "6m"},
        {"rmse_lateral", scn.lot.corridor_width_lcw >= width_7m ? 0.02 : 0.06},
        {"rmse_heading", scn.lot.corridor_width_lcw >= width_7m ? 0.006 : 0.01},
        {"max_err_lateral", scn.lot.corridor_width_lcw >= width_7m ? 0.26 : 0.3},
        {"max_err_heading",
         scn.lot.corridor_width_lcw >= width_7m ? 0.05 : 0.17}}}};
  std::ofstream out(out_dir + "/metrics.json");
  out << metrics.dump(2) << '\n';

  if (!result.trajectory.empty()) {
    double t_max = result.trajectory.back().t;
    SvgCanvas canvas(0.0, std::max(t_max, 1.0), -scn.vehicle.max_steer * 1.2,
                     scn.vehicle.max_steer * 1.2, 900);
    std::vector<std::pair<double, double>> pts;
    for (const auto& s : result.trajectory) pts.emplace_back(s.t, s.delta);
    canvas.polyline(pts, "blue", 1.5);
    canvas.save(out_dir + "/steering.svg");

    const Rect bb = scn.lot.bounding_box(scn.vehicle);
    SvgCanvas track(bb.x_lo - 0.5, bb.x_hi + 0.5, bb.y_lo - 0.5, bb.y_hi + 0.5);
    draw_lot(track, scn);
    pts.clear();
    for (const auto& s : result.trajectory) pts.emplace_back(s.x, s.y);
    track.polyline(pts, "blue", 1.5);
    track.save(out_dir + "/tracking.svg");
  }
}

}  // namespace

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
  std::ofstream out(path);
  out << "t,x,y,psi,v,delta,e_y,e_psi,gear\n";
  for (const auto& s : traj) {
    out << fmt9(s.t) << ',' << fmt9(s.x) << ',' << fmt9(s.y) << ','
        << fmt9(s.psi) << ',' << fmt9(s.v) << ',' << fmt9(s.delta) << ','
        << fmt9(s.e_y) << ',' << fmt9(s.e_psi) << ',' << s.gear << '\n';
  }
}

int count_total_gear_shifts(const GlobalPath& global, const LocalPath& local) {
  int shifts = global.gear_shift_count;
  if (!local.steer_profile.empty() && !global.direction.empty() &&
      global.direction.back() != -1) {
    ++shifts;
  }
  return shifts;
}

PipelineResult run_pipeline(const Scenario& scenario, PipelineMode mode,
                            const PipelineOptions& options) {
  Scenario scn = scenario;
  if (options.seed) scn.disturbance.seed = *options.seed;
  if (options.grid) scn.grid_counts = *options.grid;

  PipelineResult result;
  const FreeSpace free_space = build_free_space(scn.lot, scn.vehicle);
  result.grid = build_grid(scn.lot, scn.vehicle, scn.grid_counts);

  const std::string hash = scn.reachset_hash();
  bool cached = false;
  std::string cache_path;
  if (!options.cache_dir.empty()) {
    fs_std::create_directories(options.cache_dir);
    cache_path = options.cache_dir + "/reachset_" + hash + ".cache";
    cached = load_reachable_cache(cache_path, hash, result.s_r, result.s_cfr);
  }
  if (!cached) {
    ReachableOptions ropt;
    ropt.threads = options.threads;
    std::tie(result.s_r, result.s_cfr) = compute_reachable_sets(
        result.grid, scn.vehicle, free_space, scn.clothoid, scn.ts, ropt);
    if (!cache_path.empty()) {
      save_reachable_cache(cache_path, hash, result.s_r, result.s_cfr);
    }
  }

  if (options.write_artifacts) {
    fs_std::create_directories(options.out_dir);
    write_run_meta(options.out_dir, scn);
    emit_reachset_svgs(options.out_dir, scn, result.s_r, result.s_cfr);
    nlohmann::json summary{{"reachable_count", result.s_r.count()},
                           {"collision_free_count", result.s_cfr.count()},
                           {"grid_size", result.grid.size()}};
    std::ofstream out(options.out_dir + "/reachset_summary.json");
    out << summary.dump(2) << '\n';
  }
  if (mode == PipelineMode::kReachset) return result;

  const Pose goal{0.0, 0.0, 0.0};
  std::tie(result.intermediate, result.intermediate_index) =
      select_intermediate_indexed(result.s_cfr, scn.start_pose, goal,
                                  scn.weights);
  result.global =
      smooth_global_path(plan_global(scn.start_pose, result.intermediate,
                                     free_space, scn.vehicle, scn.search),
                         free_space, scn.vehicle);
  result.local = rollout_parking_path(result.intermediate, scn.vehicle,
                                      free_space, scn.clothoid, scn.ts);
  result.total_gear_shifts = count_total_gear_shifts(result.global, result.local);
  result.has_plan = true;
  if (options.write_artifacts) {
    emit_plan_artifacts(options.out_dir, scn, result);
  }
  if (mode == PipelineMode::kPlan) return result;

  // The approach path ends within the search tolerance of the intermediate
  // pose, not on it. The maneuver refits from whatever pose it starts at,
  // so the tracking reference rolls from the reached pose when that rollout
  // also parks collision-free, avoiding a spurious handoff transient.
  LocalPath local_ref = result.local;
  if (!result.global.states.empty()) {
    LocalPath from_end =
        rollout_parking_path(result.global.states.back(), scn.vehicle,
                             free_space, scn.clothoid, scn.ts);
    if (from_end.reached_goal && from_end.collision_free) {
      local_ref = std::move(from_end);
    }
  }
  const auto segments = build_reference(result.global, local_ref, scn.vehicle);
  std::tie(result.trajectory, result.metrics) =
      simulate_tracking(segments, scn.vehicle, free_space, scn.longitudinal,
                        scn.gains, scn.disturbance, scn.ts);
  result.has_sim = true;
  if (options.write_artifacts) {
    emit_sim_artifacts(options.out_dir, scn, result);
  }
  return result;
}

}  // namespace parkset
