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

#include "parkset/hybrid_astar.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <numbers>
#include <queue>
#include <unordered_map>

namespace parkset {

void SearchConfig::validate() const {
  if (!(xy_cell > 0.0 && psi_bins > 0 && step_arc > 0.0 &&
        steer_samples >= 2 && reverse_penalty > 0.0 && switch_penalty >= 0.0 &&
        steer_penalty >= 0.0 && goal_tol_xy > 0.0 && goal_tol_psi > 0.0 &&
        steer_margin > 0.0 && steer_margin <= 1.0 && max_expansions > 0)) {
    throw std::invalid_argument("invalid hybrid A* configuration");
  }
}

namespace {

// 2-D obstacle-aware lower bound: Dijkstra over xy cells from the target,
// 8-connected, cells blocked where the free-space test fails at the center.
class DistanceField {
 public:
  DistanceField(const FreeSpace& fs, const Pose& target, double cell)
      : cell_(cell), origin_x_(fs.bounding_box().x_lo),
        origin_y_(fs.bounding_box().y_lo) {
    const Rect& bb = fs.bounding_box();
    nx_ = std::max(1, static_cast<int>(std::ceil(bb.width() / cell_)) + 1);
    ny_ = std::max(1, static_cast<int>(std::ceil(bb.height() / cell_)) + 1);
    dist_.assign(static_cast<std::size_t>(nx_) * ny_,
                 std::numeric_limits<double>::infinity());
    std::vector<char> blocked(dist_.size(), 0);
    for (int iy = 0; iy < ny_; ++iy) {
      for (int ix = 0; ix < nx_; ++ix) {
        if (!fs.contains(origin_x_ + ix * cell_, origin_y_ + iy * cell_)) {
          blocked[at(ix, iy)] = 1;
        }
      }
    }
    const int tx = clamp_x(cell_index(target.x - origin_x_));
    const int ty = clamp_y(cell_index(target.y - origin_y_));
    using Item = std::pair<double, std::int64_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
    dist_[at(tx, ty)] = 0.0;
    open.emplace(0.0, at(tx, ty));
    const double diag = cell_ * std::numbers::sqrt2;
    while (!open.empty()) {
      const auto [d, idx] = open.top();
      open.pop();
      if (d > dist_[idx]) continue;
      const int ix = static_cast<int>(idx % nx_);
      const int iy = static_cast<int>(idx / nx_);
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          if (dx == 0 && dy == 0) continue;
          const int jx = ix + dx;
          const int jy = iy + dy;
          if (jx < 0 || jx >= nx_ || jy < 0 || jy >= ny_) continue;
          const std::int64_t jdx = at(jx, jy);
          if (blocked[jdx]) continue;
          const double nd = d + (dx != 0 && dy != 0 ? diag : cell_);
          if (nd < dist_[jdx]) {
            dist_[jdx] = nd;
            open.emplace(nd, jdx);
          }
        }
      }
    }
  }

  double lookup(double x, double y) const {
    const int ix = clamp_x(cell_index(x - origin_x_));
    const int iy = clamp_y(cell_index(y - origin_y_));
    return dist_[at(ix, iy)];
  }

 private:
  int cell_index(double v) const {
    return static_cast<int>(std::floor(v / cell_ + 0.5));
  }
  int clamp_x(int i) const { return std::clamp(i, 0, nx_ - 1); }
  int clamp_y(int i) const { return std::clamp(i, 0, ny_ - 1); }
  std::int64_t at(int ix, int iy) const {
    return static_cast<std::int64_t>(iy) * nx_ + ix;
  }
  double cell_;
  double origin_x_, origin_y_;
  int nx_{0}, ny_{0};
  std::vector<double> dist_;
};

struct Node {
  Pose pose;
  double g{0.0};
  int parent{-1};
  double steer{0.0};  // primitive that produced this node
  int dir{0};         // 0 only for the root
  int sub_count{0};   // substeps taken; the goal can cut a primitive short
};

struct OpenItem {
  double f;
  std::uint64_t seq;
  int node;
  bool operator>(const OpenItem& o) const {
    return f > o.f || (f == o.f && seq > o.seq);
  }
};

std::uint64_t state_key(const Pose& p, int dir, const Rect& bb,
                        const SearchConfig& cfg) {
  const auto ix = static_cast<std::uint64_t>(
      std::max(0.0, (p.x - bb.x_lo) / cfg.xy_cell));
  const auto iy = static_cast<std::uint64_t>(
      std::max(0.0, (p.y - bb.y_lo) / cfg.xy_cell));
  double a = p.psi + std::numbers::pi;
  int ipsi = static_cast<int>(a / (2.0 * std::numbers::pi) * cfg.psi_bins);
  ipsi = std::clamp(ipsi, 0, cfg.psi_bins - 1);
  return (ix << 40) | (iy << 16) | (static_cast<std::uint64_t>(ipsi) << 2) |
         static_cast<std::uint64_t>(dir + 1);
}

bool at_goal(const Pose& p, const Pose& target, const SearchConfig& cfg) {
  return std::hypot(p.x - target.x, p.y - target.y) <= cfg.goal_tol_xy &&
         angle_distance(p.psi, target.psi) <= cfg.goal_tol_psi;
}

}  // namespace

GlobalPath plan_global(const Pose& start, const Pose& target,
                       const FreeSpace& fs, const VehicleParams& params,
                       const SearchConfig& cfg) {
  cfg.validate();
  if (!circle_centers_in_free_space(start, params, fs)) {
    throw std::invalid_argument("plan_global: start pose is in collision");
  }
  if (!circle_centers_in_free_space(target, params, fs)) {
    throw std::invalid_argument("plan_global: target pose is in collision");
  }

  const int n_sub = std::max(1, static_cast<int>(std::ceil(cfg.step_arc / 0.1)));
  const double sub_len = cfg.step_arc / n_sub;

  GlobalPath path;
  path.step_length = sub_len;
  if (at_goal(start, target, cfg)) {
    path.states.push_back(start);
    return path;
  }

  const DistanceField field(fs, target, cfg.xy_cell);
  auto heuristic = [&](const Pose& p) {
    const double euclid = std::hypot(p.x - target.x, p.y - target.y);
    const double flood = field.lookup(p.x, p.y);
    return std::isfinite(flood) ? std::max(euclid, flood) : euclid;
  };

  std::vector<Node> nodes;
  nodes.push_back(Node{start, 0.0, -1, 0.0, 0});
  std::priority_queue<OpenItem, std::vector<OpenItem>, std::greater<>> open;
  std::uint64_t seq = 0;
  open.push(OpenItem{heuristic(start), seq++, 0});
  std::unordered_map<std::uint64_t, double> best_g;
  best_g[state_key(start, 0, fs.bounding_box(), cfg)] = 0.0;

  // Plan with a margin below the actuator limit so the tracking feedback
  // keeps authority on the tightest planned arcs.
  const double steer_span = cfg.steer_margin * params.max_steer;
  std::vector<double> steers(cfg.steer_samples);
  for (int i = 0; i < cfg.steer_samples; ++i) {
    steers[i] = -steer_span + 2.0 * steer_span * i / (cfg.steer_samples - 1);
  }

  int expansions = 0;
  int goal_node = -1;
  while (!open.empty()) {
    const OpenItem item = open.top();
    open.pop();
    const Node current = nodes[item.node];  // copy: nodes may reallocate
    const auto cur_key = state_key(current.pose, current.dir,
                                   fs.bounding_box(), cfg);
    const auto cur_it = best_g.find(cur_key);
    if (cur_it != best_g.end() && cur_it->second < current.g - 1e-12) {
      continue;  // superseded by a cheaper node in the same cell
    }
    if (++expansions > cfg.max_expansions) {
      throw NoPathError("plan_global: expansion limit reached", expansions);
    }

    for (const int dir : {+1, -1}) {
      for (const double steer : steers) {
        Pose p = current.pose;
        bool blocked = false;
        bool reached = false;
        int subs = 0;
        for (int k = 0; k < n_sub; ++k) {
          p = kinematic_step(p, static_cast<double>(dir), steer, sub_len,
                             params.wheelbase_l);
          if (!circle_centers_in_free_space(p, params, fs)) {
            blocked = true;
            break;
          }
          ++subs;
          if (at_goal(p, target, cfg)) {
            reached = true;
            break;
          }
        }
        if (blocked) continue;
        const double arc = sub_len * subs;
        double cost = arc;
        if (dir < 0) cost *= cfg.reverse_penalty;
        cost += cfg.steer_penalty * std::abs(steer) * arc;
        if (current.dir != 0 && dir != current.dir) {
          cost += cfg.switch_penalty;
        }
        const double g = current.g + cost;
        const std::uint64_t key = state_key(p, dir, fs.bounding_box(), cfg);
        auto it = best_g.find(key);
        if (it != best_g.end() && it->second <= g) continue;
        best_g[key] = g;
        nodes.push_back(Node{p, g, item.node, steer, dir, subs});
        const int id = static_cast<int>(nodes.size()) - 1;
        if (reached) {
          goal_node = id;
          break;
        }
        open.push(OpenItem{g + heuristic(p), seq++, id});
      }
      if (goal_node >= 0) break;
    }
    if (goal_node >= 0) break;
  }

  if (goal_node < 0) {
    throw NoPathError("plan_global: open set exhausted without reaching goal",
                      expansions);
  }

  // Re-integrate the primitive chain so the recorded states replay exactly.
  std::deque<const Node*> chain;
  for (int id = goal_node; nodes[id].parent >= 0; id = nodes[id].parent) {
    chain.push_front(&nodes[id]);
  }
  path.states.push_back(start);
  Pose p = start;
  int prev_dir = 0;
  for (const Node* node : chain) {
    if (prev_dir != 0 && node->dir != prev_dir) ++path.gear_shift_count;
    prev_dir = node->dir;
    for (int k = 0; k < node->sub_count; ++k) {
      p = kinematic_step(p, static_cast<double>(node->dir), node->steer,
                         sub_len, params.wheelbase_l);
      path.states.push_back(p);
      path.steering.push_back(node->steer);
      path.direction.push_back(node->dir);
    }
  }
  return path;
}

GlobalPath smooth_global_path(const GlobalPath& path, const FreeSpace& fs,
                              const VehicleParams& params, int iterations,
                              double weight_smooth, double weight_anchor) {
  GlobalPath out = path;
  const std::size_t n = out.states.size();
  if (n < 3 || out.direction.size() + 1 != n) return out;

  // Gear-segment boundaries stay fixed, as do both endpoints.
  std::vector<std::size_t> bounds{0};
  for (std::size_t i = 1; i < out.direction.size(); ++i) {
    if (out.direction[i] != out.direction[i - 1]) bounds.push_back(i);
  }
  bounds.push_back(n - 1);

  const std::vector<Pose> anchor = out.states;
  for (int it = 0; it < iterations; ++it) {
    for (std::size_t b = 0; b + 1 < bounds.size(); ++b) {
      for (std::size_t i = bounds[b] + 1; i < bounds[b + 1]; ++i) {
        Pose cand = out.states[i];
        cand.x += weight_smooth * (out.states[i - 1].x + out.states[i + 1].x -
                                   2.0 * out.states[i].x) +
                  weight_anchor * (anchor[i].x - out.states[i].x);
        cand.y += weight_smooth * (out.states[i - 1].y + out.states[i + 1].y -
                                   2.0 * out.states[i].y) +
                  weight_anchor * (anchor[i].y - out.states[i].y);
        if (circle_centers_in_free_space(cand, params, fs)) {
          out.states[i] = cand;
        }
      }
    }
  }

  // Headings from chord tangents. Interior and gear-change vertices are
  // recomputed: keeping the pre-smoothing headings at gear changes leaves
  // the reference with heading seams and curvature spikes the rate-limited
  // wheel cannot follow. The start and final poses keep their headings;
  // the final pose is the handoff to the local parking maneuver. Each
  // chord votes with the vehicle heading implied by its travel direction;
  // a vertex takes the circular mean of its adjacent chords.
  {
    const std::size_t n_chords = out.direction.size();
    std::vector<double> chord_psi(n_chords);
    for (std::size_t j = 0; j < n_chords; ++j) {
      const double tx = out.states[j + 1].x - out.states[j].x;
      const double ty = out.states[j + 1].y - out.states[j].y;
      if (tx * tx + ty * ty < 1e-18) {
        chord_psi[j] = out.states[j].psi;
        continue;
      }
      const double tangent = std::atan2(ty, tx);
      chord_psi[j] = out.direction[j] == 1
                         ? tangent
                         : wrap_angle(tangent + std::numbers::pi);
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double sx = std::sin(chord_psi[i - 1]) + std::sin(chord_psi[i]);
      const double cx = std::cos(chord_psi[i - 1]) + std::cos(chord_psi[i]);
      out.states[i].psi = std::atan2(sx, cx);
    }
  }

  // Per-step steering back-solved from the smoothed geometry so the
  // tracking feedforward sees the smoothed curvature.
  for (std::size_t i = 0; i < out.steering.size(); ++i) {
    const double h = std::hypot(out.states[i + 1].x - out.states[i].x,
                                out.states[i + 1].y - out.states[i].y);
    if (h < 1e-9) continue;
    const double dpsi = wrap_angle(out.states[i + 1].psi - out.states[i].psi);
    // Kinks at the fixed endpoints can back-solve to spurious extremes;
    // keep the feedforward within what the actuator can do.
    out.steering[i] = std::clamp(
        std::atan(params.wheelbase_l * dpsi /
                  (h * static_cast<double>(out.direction[i]))),
        -params.max_steer, params.max_steer);
  }

  for (const Pose& p : out.states) {
    if (!circle_centers_in_free_space(p, params, fs)) return path;
  }
  return out;
}

}  // namespace parkset
