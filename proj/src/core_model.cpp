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

#include "parkset/core_model.hpp"

#include <cmath>
#include <numbers>

namespace parkset {

double wrap_angle(double angle) {
  const double two_pi = 2.0 * std::numbers::pi;
  double a = std::fmod(angle, two_pi);
  if (a <= -std::numbers::pi) a += two_pi;
  if (a > std::numbers::pi) a -= two_pi;
  return a;
}

double angle_distance(double a, double b) {
  return std::abs(wrap_angle(a - b));
}

bool pose_finite(const Pose& p) {
  return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.psi);
}

void VehicleParams::validate() const {
  if (!(length_vl > 0.0 && width_vw > 0.0 && wheelbase_l > 0.0 &&
        rear_overhang_lr > 0.0)) {
    throw std::invalid_argument("vehicle dimensions must be positive");
  }
  if (!(wheelbase_l < length_vl) || !(rear_overhang_lr < length_vl)) {
    throw std::invalid_argument(
        "wheelbase and rear overhang must be smaller than overall length");
  }
  if (!(max_steer > 0.0 && max_steer < std::numbers::pi / 2.0)) {
    throw std::invalid_argument("max_steer must lie in (0, pi/2)");
  }
  if (!(max_steer_rate > 0.0)) {
    throw std::invalid_argument("max_steer_rate must be positive");
  }
}

Pose kinematic_step(const Pose& pose, double v, double delta, double ts,
                    double wheelbase) {
  if (!pose_finite(pose) || !std::isfinite(v) || !std::isfinite(delta)) {
    throw std::invalid_argument("kinematic_step: non-finite input");
  }
  if (!(ts > 0.0) || !(wheelbase > 0.0)) {
    throw std::invalid_argument("kinematic_step: ts and wheelbase must be > 0");
  }
  if (!(std::abs(delta) < std::numbers::pi / 2.0)) {
    throw std::invalid_argument("kinematic_step: |delta| must be < pi/2");
  }
  Pose next;
  next.x = pose.x + ts * v * std::cos(pose.psi);
  next.y = pose.y + ts * v * std::sin(pose.psi);
  next.psi = wrap_angle(pose.psi + ts * (v / wheelbase) * std::tan(delta));
  return next;
}

double steering_from_curvature(double kappa, double wheelbase) {
  if (!std::isfinite(kappa) || !(wheelbase > 0.0)) {
    throw std::invalid_argument("steering_from_curvature: invalid input");
  }
  return std::atan(kappa * wheelbase);
}

std::pair<Circle, Circle> footprint_circles(const Pose& pose,
                                            const VehicleParams& params) {
  const double radius = params.cover_radius();
  const double c = std::cos(pose.psi);
  const double s = std::sin(pose.psi);
  const double rear_offset = params.length_vl / 4.0 - params.rear_overhang_lr;
  const double front_offset =
      3.0 * params.length_vl / 4.0 - params.rear_overhang_lr;
  Circle rear{pose.x + rear_offset * c, pose.y + rear_offset * s, radius};
  Circle front{pose.x + front_offset * c, pose.y + front_offset * s, radius};
  return {rear, front};
}

}  // namespace parkset
