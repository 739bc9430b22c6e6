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

#include "parkset/tracking_sim.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace parkset {

void LongitudinalConfig::validate(double ts) const {
  if (!(nu > 0.0 && nu * ts < 2.0)) {
    throw std::invalid_argument("nu*ts must lie in (0, 2)");
  }
  if (!(tau > 0.0 && v_max > 0.0)) {
    throw std::invalid_argument("tau and v_max must be positive");
  }
  if (!(ts < tau)) {
    throw std::invalid_argument("ts must be smaller than tau");
  }
}

void LateralGains::validate() const {
  if (k_y < 0.0 || k_psi < 0.0 || k_d < 0.0) {
    throw std::invalid_argument("lateral gains must be non-negative");
  }
}

double longitudinal_command(double progress_x, const LongitudinalConfig& cfg) {
  return std::clamp(-cfg.nu * progress_x, -cfg.v_max, cfg.v_max);
}

double powertrain_step(double accel, double accel_cmd, double ts, double tau) {
  if (!(ts > 0.0 && ts < tau)) {
    throw std::invalid_argument("powertrain_step requires 0 < ts < tau");
  }
  return (1.0 - ts / tau) * accel + (ts / tau) * accel_cmd;
}

double lateral_error(const RefPoint& ref, const Pose& actual) {
  const double dx = actual.x - ref.pose.x;
  const double dy = actual.y - ref.pose.y;
  // Cross product of the travel tangent with the offset vector.
  return std::cos(ref.tangent) * dy - std::sin(ref.tangent) * dx;
}

namespace {

// Unlimited (but angle-clamped) steering target: feedforward from the
// reference curvature plus error feedback.
double steering_target(const RefPoint& ref, const Pose& actual,
                       const LateralGains& gains, const VehicleParams& params,
                       double e_y_rate) {
  const double ff = steering_from_curvature(ref.curvature, params.wheelbase_l);
  const double e_y = lateral_error(ref, actual);
  const double e_psi = wrap_angle(ref.pose.psi - actual.psi);
  // Feedback sign flips with the motion direction; the heading response of
  // the kinematic model reverses when v < 0.
  const double fb = ref.direction *
                    (gains.k_psi * e_psi - gains.k_y * e_y -
                     gains.k_d * e_y_rate);
  return std::clamp(ff + fb, -params.max_steer, params.max_steer);
}

}  // namespace

double steering_command(const RefPoint& ref, const Pose& actual,
                        const LateralGains& gains, const VehicleParams& params,
                        double prev_delta, double e_y_rate, double ts) {
  const double delta = steering_target(ref, actual, gains, params, e_y_rate);
  const double max_step = params.max_steer_rate * ts;
  return std::clamp(delta, prev_delta - max_step, prev_delta + max_step);
}

std::vector<RefSegment> build_reference(const GlobalPath& global,
                                        const LocalPath& local,
                                        const VehicleParams& params) {
  std::vector<RefSegment> segments;
  for (std::size_t i = 0; i < global.steering.size(); ++i) {
    if (segments.empty() || segments.back().direction != global.direction[i]) {
      RefSegment seg;
      seg.direction = global.direction[i];
      seg.states.push_back(global.states[i]);
      segments.push_back(std::move(seg));
    }
    segments.back().states.push_back(global.states[i + 1]);
    segments.back().curvature.push_back(std::tan(global.steering[i]) /
                                        params.wheelbase_l);
  }
  if (!local.steer_profile.empty()) {
    // The parking maneuver is driven in reverse. When the approach already
    // ends in reverse the maneuver continues the same motion, so it joins
    // that segment instead of forcing a stop at the seam.
    if (segments.empty() || segments.back().direction != -1) {
      RefSegment seg;
      seg.direction = -1;
      seg.states.push_back(local.states.front());
      segments.push_back(std::move(seg));
    }
    RefSegment& seg = segments.back();
    for (std::size_t i = 1; i < local.states.size(); ++i) {
      seg.states.push_back(local.states[i]);
      seg.curvature.push_back(std::tan(local.steer_profile[i - 1]) /
                              params.wheelbase_l);
    }
  }
  return segments;
}

namespace {

double uniform(std::mt19937_64& rng, double bound) {
  // Deterministic mapping independent of library distribution internals.
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return bound * (2.0 * u - 1.0);
}

struct SegmentGeometry {
  const RefSegment* seg;
  std::vector<double> arclen;  // cumulative, arclen[0] = 0
  double total{0.0};

  explicit SegmentGeometry(const RefSegment& s) : seg(&s) {
    arclen.resize(s.states.size(), 0.0);
    for (std::size_t i = 1; i < s.states.size(); ++i) {
      arclen[i] = arclen[i - 1] +
                  std::hypot(s.states[i].x - s.states[i - 1].x,
                             s.states[i].y - s.states[i - 1].y);
    }
    total = arclen.back();
  }

  // Nearest point on the polyline; returns progress s and the reference
  // sample at that point.
  std::pair<double, RefPoint> project(const Pose& actual) const {
    const auto& st = seg->states;
    double best_d2 = std::numeric_limits<double>::infinity();
    double best_s = 0.0;
    RefPoint best;
    for (std::size_t i = 0; i + 1 < st.size(); ++i) {
      const double ex = st[i + 1].x - st[i].x;
      const double ey = st[i + 1].y - st[i].y;
      const double len2 = ex * ex + ey * ey;
      double u = 0.0;
      if (len2 > 0.0) {
        u = ((actual.x - st[i].x) * ex + (actual.y - st[i].y) * ey) / len2;
        u = std::clamp(u, 0.0, 1.0);
      }
      const double px = st[i].x + u * ex;
      const double py = st[i].y + u * ey;
      const double d2 = (actual.x - px) * (actual.x - px) +
                        (actual.y - py) * (actual.y - py);
      if (d2 < best_d2) {
        best_d2 = d2;
        best_s = arclen[i] + u * std::sqrt(len2);
        RefPoint rp;
        rp.pose.x = px;
        rp.pose.y = py;
        rp.pose.psi = wrap_angle(
            st[i].psi + u * wrap_angle(st[i + 1].psi - st[i].psi));
        rp.curvature = seg->curvature.empty()
                           ? 0.0
                           : seg->curvature[std::min(i, seg->curvature.size() - 1)];
        rp.tangent = len2 > 0.0 ? std::atan2(ey, ex) : st[i].psi;
        rp.direction = seg->direction;
        best = rp;
      }
    }
    return {best_s, best};
  }
};

}  // namespace

std::pair<Trajectory, TrackingMetrics> simulate_tracking(
    const std::vector<RefSegment>& segments, const VehicleParams& params,
    const FreeSpace& fs, const LongitudinalConfig& long_cfg,
    const LateralGains& gains, const DisturbanceConfig& dist, double ts) {
  if (segments.empty()) {
    throw std::invalid_argument("simulate_tracking: empty reference path");
  }
  long_cfg.validate(ts);
  gains.validate();
  params.validate();

  std::mt19937_64 rng(dist.seed);
  Trajectory traj;
  TrackingMetrics metrics;
  double sum_sq_lat = 0.0;
  double sum_sq_psi = 0.0;
  std::size_t n_samples = 0;

  Pose pose = segments.front().states.front();
  double t = 0.0;
  double delta = 0.0;
  int divergence_steps = 0;
  int prev_dir = 0;

  for (std::size_t si = 0; si < segments.size(); ++si) {
    const RefSegment& seg = segments[si];
    if (seg.states.size() < 2) continue;
    const SegmentGeometry geom(seg);
    if (prev_dir != 0 && seg.direction != prev_dir) ++metrics.gear_shift_count;
    prev_dir = seg.direction;

    const double end_tol = 0.02;

    double v = 0.0;
    double accel = 0.0;
    double prev_e_y = 0.0;
    double prev_e_v = 0.0;
    bool first = true;
    const int max_steps = static_cast<int>(60.0 / ts);
    for (int step = 0; step < max_steps; ++step) {
      const auto [s_proj, ref] = geom.project(pose);
      const double s_rem = geom.total - s_proj;
      if (s_rem < end_tol) break;

      const double e_y = lateral_error(ref, pose);
      const double e_psi = wrap_angle(ref.pose.psi - pose.psi);
      if (first) prev_e_y = e_y;
      const double e_y_rate = (e_y - prev_e_y) / ts;
      prev_e_y = e_y;

      delta = steering_command(ref, pose, gains, params, delta, e_y_rate, ts);
      const double target =
          steering_target(ref, pose, gains, params, e_y_rate);

      // Steer in place after a gear change: hold until the rate-limited
      // wheel reaches the new segment's demand, and keep a floor under the
      // creep speed so the nu-law tail does not stall short of the segment
      // end.
      double v_des;
      if (std::abs(target - delta) > 0.1 && std::abs(v) < 0.05) {
        v_des = 0.0;
      } else {
        constexpr double kCreepFloor = 0.05;
        const double mag = std::max(
            kCreepFloor, -longitudinal_command(s_rem, long_cfg));
        v_des = static_cast<double>(seg.direction) * mag;
      }
      const double e_v = v_des - v;
      if (first) prev_e_v = e_v;
      const double accel_cmd =
          long_cfg.kp * e_v + long_cfg.kd * (e_v - prev_e_v) / ts;
      prev_e_v = e_v;
      first = false;
      accel = powertrain_step(accel, accel_cmd, ts, long_cfg.tau);
      v += ts * accel;

      pose = kinematic_step(pose, v, delta, ts, params.wheelbase_l);
      pose.x += uniform(rng, dist.bound_xy);
      pose.y += uniform(rng, dist.bound_xy);
      pose.psi = wrap_angle(pose.psi + uniform(rng, dist.bound_psi));
      t += ts;

      traj.push_back(TrajectorySample{t, pose.x, pose.y, pose.psi, v, delta,
                                      e_y, e_psi, seg.direction});
      sum_sq_lat += e_y * e_y;
      sum_sq_psi += e_psi * e_psi;
      ++n_samples;
      metrics.max_err_lateral = std::max(metrics.max_err_lateral, std::abs(e_y));
      metrics.max_err_heading =
          std::max(metrics.max_err_heading, std::abs(e_psi));

      if (std::abs(e_y) > 1.0) {
        if (++divergence_steps >= 100) {
          throw TrackingFailure("tracking diverged: lateral error above 1 m",
                                std::move(traj));
        }
      } else {
        divergence_steps = 0;
      }
    }
  }

  if (n_samples > 0) {
    metrics.rmse_lateral = std::sqrt(sum_sq_lat / n_samples);
    metrics.rmse_heading = std::sqrt(sum_sq_psi / n_samples);
  }
  if (!circle_centers_in_free_space(pose, params, fs)) {
    throw TrackingFailure("tracking ended in collision", std::move(traj));
  }
  return {std::move(traj), metrics};
}

}  // namespace parkset
