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

#include <vector>

#include "parkset/core_model.hpp"
#include "parkset/environment.hpp"

namespace parkset {

/// Cubic y = c0 + c1 x + c2 x^2 + c3 x^3 whose curvature is affine in x
/// (the small-curvature clothoid approximation).
struct ClothoidCoeffs {
  double c0{0.0};
  double c1{0.0};
  double c2{0.0};
  double c3{0.0};
};

struct ClothoidSample {
  double f{0.0};      // lateral position [m]
  double theta{0.0};  // tangent angle [rad]
  double kappa{0.0};  // curvature [1/m]
};

struct ClothoidConfig {
  double towing_distance_Lv{1.0};  // virtual towing distance behind x=0 [m]
  double reverse_speed{0.5};       // commanded |v| [m/s]
  double eps_y{0.05};              // lateral termination threshold [m]
  // The fit converges fully only at x = -Lv, so the heading residual at the
  // goal line is about twice the lateral one; the threshold reflects that.
  double eps_psi{0.1};             // heading termination threshold [rad]
  int max_steps{10000};

  void validate() const;
};

/// Rollout of the single reverse maneuver toward the goal at the origin.
struct LocalPath {
  std::vector<Pose> states;            // includes the start pose
  std::vector<double> steer_profile;   // executed steering, one per step
  std::vector<double> commanded_steer; // unclamped atan(kappa*l), one per step
  bool reached_goal{false};
  bool collision_free{false};
};

ClothoidSample clothoid_eval(const ClothoidCoeffs& c, double x);

/// The unique cubic through (pose.x, pose.y) with slope tan(pose.psi),
/// clamped flat at the virtual towed point x = -Lv.
ClothoidCoeffs fit_coeffs(const Pose& pose, const ClothoidConfig& cfg);

/// Receding-horizon reverse rollout: refit at the current pose each step,
/// command the clothoid curvature, integrate the kinematic model with
/// v = -reverse_speed until x <= 0 or max_steps.
LocalPath rollout_parking_path(const Pose& start, const VehicleParams& params,
                               const FreeSpace& fs, const ClothoidConfig& cfg,
                               double ts);

}  // namespace parkset
