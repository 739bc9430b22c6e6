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

#include <cmath>
#include <stdexcept>
#include <utility>

namespace parkset {

/// Vehicle configuration at the center of the rear axle, in parking
/// coordinates. psi is kept normalized to (-pi, pi].
struct Pose {
  double x{0.0};
  double y{0.0};
  double psi{0.0};
};

/// Wraps an angle to (-pi, pi].
double wrap_angle(double angle);

/// Absolute angular difference wrapped to [0, pi].
double angle_distance(double a, double b);

bool pose_finite(const Pose& p);

struct VehicleParams {
  double length_vl{4.325};      // overall length [m]
  double width_vw{1.890};       // overall width [m]
  double wheelbase_l{2.630};    // [m]
  double rear_overhang_lr{0.845};  // [m]
  double max_steer{0.6};        // [rad]
  double max_steer_rate{0.5};   // [rad/s]

  void validate() const;
  /// Covering-circle radius for collision checks.
  double cover_radius() const {
    return std::sqrt(length_vl * length_vl / 16.0 + width_vw * width_vw / 4.0);
  }
};

struct Circle {
  double center_x{0.0};
  double center_y{0.0};
  double radius{1.0};
};

/// One step of the discrete kinematic bicycle model (zero-order hold).
/// v is the signed speed at the rear axle, delta the front steering angle.
Pose kinematic_step(const Pose& pose, double v, double delta, double ts,
                    double wheelbase);

/// delta = atan(kappa * wheelbase). Odd and monotone in kappa.
double steering_from_curvature(double kappa, double wheelbase);

/// Rear and front covering circles at the quarter and three-quarter points
/// of the vehicle center line, both with cover_radius().
std::pair<Circle, Circle> footprint_circles(const Pose& pose,
                                            const VehicleParams& params);

}  // namespace parkset
