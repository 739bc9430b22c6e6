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

#include "parkset/clothoid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace parkset {

void ClothoidConfig::validate() const {
  if (!(towing_distance_Lv > 0.0 && reverse_speed > 0.0 && eps_y > 0.0 &&
        eps_psi > 0.0 && max_steps > 0)) {
    throw std::invalid_argument("invalid clothoid configuration");
  }
}

ClothoidSample clothoid_eval(const ClothoidCoeffs& c, double x) {
  ClothoidSample s;
  s.f = c.c0 + x * (c.c1 + x * (c.c2 + x * c.c3));
  s.theta = std::atan(c.c1 + x * (2.0 * c.c2 + 3.0 * c.c3 * x));
  s.kappa = 2.0 * c.c2 + 6.0 * c.c3 * x;
  return s;
}

ClothoidCoeffs fit_coeffs(const Pose& pose, const ClothoidConfig& cfg) {
  if (!pose_finite(pose)) {
    throw std::invalid_argument("fit_coeffs: non-finite pose");
  }
  if (!(std::abs(pose.psi) < std::numbers::pi / 2.0)) {
    throw std::domain_error("fit_coeffs: heading not representable as slope");
  }
  const double lv = cfg.towing_distance_Lv;
  const double u = pose.x + lv;
  if (!(u > 1e-9)) {
    throw std::domain_error("fit_coeffs: singular fit, pose.x + Lv ~ 0");
  }
  // Boundary conditions: f(pose.x) = pose.y, f'(pose.x) = tan(psi),
  // f(-Lv) = 0, f'(-Lv) = 0. With g(u) = f(u - Lv) = u^2 (a + b u):
  const double slope = std::tan(pose.psi);
  const double a = (3.0 * pose.y - slope * u) / (u * u);
  const double b = (slope * u - 2.0 * pose.y) / (u * u * u);
  // Expand g back to powers of x (x = u - Lv).
  ClothoidCoeffs c;
  c.c3 = b;
  c.c2 = a + 3.0 * b * lv;
  c.c1 = 2.0 * a * lv + 3.0 * b * lv * lv;
  c.c0 = a * lv * lv + b * lv * lv * lv;
  return c;
}

LocalPath rollout_parking_path(const Pose& start, const VehicleParams& params,
                               const FreeSpace& fs, const ClothoidConfig& cfg,
                               double ts) {
  cfg.validate();
  if (!(start.x > 0.0)) {
    throw std::invalid_argument("rollout_parking_path: start.x must be > 0");
  }
  LocalPath path;
  path.states.push_back(start);
  path.collision_free = circle_centers_in_free_space(start, params, fs);

  Pose pose = start;
  for (int step = 0; step < cfg.max_steps && pose.x > 0.0; ++step) {
    ClothoidCoeffs coeffs;
    try {
      coeffs = fit_coeffs(pose, cfg);
    } catch (const std::domain_error&) {
      path.reached_goal = false;
      return path;
    }
    const double kappa = 2.0 * coeffs.c2 + 6.0 * coeffs.c3 * pose.x;
    const double commanded =
        steering_from_curvature(kappa, params.wheelbase_l);
    const double delta =
        std::clamp(commanded, -params.max_steer, params.max_steer);
    pose = kinematic_step(pose, -cfg.reverse_speed, delta, ts,
                          params.wheelbase_l);
    path.states.push_back(pose);
    path.steer_profile.push_back(delta);
    path.commanded_steer.push_back(commanded);
    if (path.collision_free &&
        !circle_centers_in_free_space(pose, params, fs)) {
      path.collision_free = false;
    }
  }
  path.reached_goal = pose.x <= 0.0 && std::abs(pose.y) <= cfg.eps_y &&
                      std::abs(pose.psi) <= cfg.eps_psi;
  return path;
}

}  // namespace parkset
