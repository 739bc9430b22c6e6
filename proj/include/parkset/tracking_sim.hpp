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

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "parkset/clothoid.hpp"
#include "parkset/core_model.hpp"
#include "parkset/environment.hpp"
#include "parkset/hybrid_astar.hpp"

namespace parkset {

struct LongitudinalConfig {
  double nu{0.5};    // velocity-law gain [1/s], must satisfy nu*ts in (0, 2)
  double tau{0.2};   // powertrain time constant [s]
  double v_max{0.5}; // speed magnitude cap [m/s], maneuvering pace
  double kp{2.0};    // velocity feedback gains
  double kd{0.1};

  void validate(double ts) const;
};

struct LateralGains {
  double k_y{0.6};   // [rad/m]
  double k_psi{3.0};
  double k_d{0.15};  // [rad*s/m]

  void validate() const;
};

struct DisturbanceConfig {
  double bound_xy{0.001};   // per-step additive position bound [m]
  double bound_psi{0.0005}; // per-step additive heading bound [rad]
  std::uint64_t seed{0};
};

struct TrackingMetrics {
  double rmse_lateral{0.0};
  double rmse_heading{0.0};
  double max_err_lateral{0.0};
  double max_err_heading{0.0};
  int gear_shift_count{0};
};

struct TrajectorySample {
  double t{0.0};
  double x{0.0}, y{0.0}, psi{0.0};
  double v{0.0};
  double delta{0.0};
  double e_y{0.0}, e_psi{0.0};
  int gear{0};
};
using Trajectory = std::vector<TrajectorySample>;

/// One gear-constant piece of the reference path.
struct RefSegment {
  std::vector<Pose> states;
  std::vector<double> curvature;  // per step (states.size() - 1)
  int direction{1};               // +1 forward, -1 reverse
};

struct TrackingFailure : std::runtime_error {
  TrackingFailure(const std::string& msg, Trajectory partial)
      : std::runtime_error(msg), trajectory(std::move(partial)) {}
  Trajectory trajectory;
};

/// Desired speed v^d = -nu * remaining distance, magnitude capped at v_max.
double longitudinal_command(double progress_x, const LongitudinalConfig& cfg);

/// First-order powertrain lag on acceleration.
double powertrain_step(double accel, double accel_cmd, double ts, double tau);

struct RefPoint {
  Pose pose;          // reference pose (recorded vehicle heading)
  double curvature{0.0};
  double tangent{0.0};  // travel-direction angle of the polyline
  int direction{1};
};

/// Signed lateral offset of the actual position, left of travel positive.
double lateral_error(const RefPoint& ref, const Pose& actual);

/// Feedforward steering from the reference curvature plus error feedback,
/// clamped to max_steer and rate-limited against prev_delta.
double steering_command(const RefPoint& ref, const Pose& actual,
                        const LateralGains& gains, const VehicleParams& params,
                        double prev_delta, double e_y_rate, double ts);

/// Splits the approach path at gear changes and appends the reverse clothoid
/// segment; curvatures are recovered from the recorded steering.
std::vector<RefSegment> build_reference(const GlobalPath& global,
                                        const LocalPath& local,
                                        const VehicleParams& params);

std::pair<Trajectory, TrackingMetrics> simulate_tracking(
    const std::vector<RefSegment>& segments, const VehicleParams& params,
    const FreeSpace& fs, const LongitudinalConfig& long_cfg,
    const LateralGains& gains, const DisturbanceConfig& dist, double ts);

}  // namespace parkset
