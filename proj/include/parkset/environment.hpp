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

namespace parkset {

/// Axis-aligned rectangle in parking coordinates.
struct Rect {
  double x_lo{0.0};
  double x_hi{0.0};
  double y_lo{0.0};
  double y_hi{0.0};

  bool contains(double x, double y) const {
    return x >= x_lo && x <= x_hi && y >= y_lo && y <= y_hi;
  }
  double width() const { return x_hi - x_lo; }
  double height() const { return y_hi - y_lo; }
};

/// Euclidean distance from a point to an axis-aligned rectangle (0 inside).
double point_rect_distance(double x, double y, const Rect& r);

/// Parking-lot layout in parking coordinates. The goal pose is the origin:
/// the slot opens toward +x, the corridor runs along y in front of it.
///
///   slot:     x in [-l_r, l_sl - l_r], y in [-l_sw/2, +l_sw/2]
///   corridor: x in [l_sl - l_r, l_sl - l_r + l_cw], y in [-l_cl/2, +l_cl/2]
struct ParkingLot {
  double corridor_length_lcl{12.0};
  double corridor_width_lcw{7.0};
  double slot_length_lsl{5.5};
  double slot_width_lsw{2.9};
  std::vector<Rect> obstacle_zones;

  void validate(const VehicleParams& params) const;

  double slot_x_lo(const VehicleParams& p) const { return -p.rear_overhang_lr; }
  double corridor_x_lo(const VehicleParams& p) const {
    return slot_length_lsl - p.rear_overhang_lr;
  }
  double corridor_x_hi(const VehicleParams& p) const {
    return corridor_x_lo(p) + corridor_width_lcw;
  }
  /// Bounding box of the whole workspace (slot + corridor).
  Rect bounding_box(const VehicleParams& p) const;
};

/// A blocked rectangle together with the clearance the covering-circle
/// centers must keep from it (dilation with rounded corners).
struct BlockedRect {
  Rect rect;
  double margin{0.0};
};

/// Free space for the covering-circle centers. Obstacle zones and the
/// corridor outer boundary carry the full inflation radius R; the slot
/// flank and back walls carry only half the vehicle width, since R exceeds
/// the slot half-width and a full margin there would forbid every slot
/// entry. Membership on the boundary counts as inside.
class FreeSpace {
 public:
  FreeSpace(const ParkingLot& lot, const VehicleParams& params,
            double inflation_radius);

  bool contains(double x, double y) const;
  double inflation_radius() const { return radius_; }
  double slot_margin() const { return slot_margin_; }
  /// True when the eroded workspace has no interior left at all.
  bool empty() const { return empty_; }

  const Rect& bounding_box() const { return bbox_; }
  /// Obstacle rectangles plus the two wall strips flanking the slot,
  /// un-inflated, each with its clearance margin.
  const std::vector<BlockedRect>& blocked_rects() const { return blocked_; }

 private:
  double radius_;
  double slot_margin_;
  Rect bbox_;  // un-eroded workspace bounding box
  std::vector<BlockedRect> blocked_;
  bool empty_{false};
};

FreeSpace build_free_space(const ParkingLot& lot, const VehicleParams& params);

/// Algorithm-level collision predicate: both covering-circle centers of the
/// pose lie in the free space.
bool circle_centers_in_free_space(const Pose& pose, const VehicleParams& params,
                                  const FreeSpace& fs);

}  // namespace parkset
