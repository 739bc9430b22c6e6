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

#include "parkset/environment.hpp"

#include <algorithm>
#include <cmath>

namespace parkset {

double point_rect_distance(double x, double y, const Rect& r) {
  const double dx = std::max({r.x_lo - x, 0.0, x - r.x_hi});
  const double dy = std::max({r.y_lo - y, 0.0, y - r.y_hi});
  return std::hypot(dx, dy);
}

void ParkingLot::validate(const VehicleParams& params) const {
  if (!(corridor_length_lcl > 0.0 && corridor_width_lcw > 0.0 &&
        slot_length_lsl > 0.0 && slot_width_lsw > 0.0)) {
    throw std::invalid_argument("parking lot dimensions must be positive");
  }
  if (!(slot_width_lsw > params.width_vw)) {
    throw std::invalid_argument("slot width must exceed vehicle width");
  }
  const Rect bbox = bounding_box(params);
  for (const Rect& r : obstacle_zones) {
    if (!(r.width() > 0.0 && r.height() > 0.0)) {
      throw std::invalid_argument("obstacle zone must have positive area");
    }
    if (r.x_lo < bbox.x_lo || r.x_hi > bbox.x_hi || r.y_lo < bbox.y_lo ||
        r.y_hi > bbox.y_hi) {
      throw std::invalid_argument(
          "obstacle zone must lie within the workspace bounding box");
    }
  }
}

Rect ParkingLot::bounding_box(const VehicleParams& p) const {
  return Rect{slot_x_lo(p), corridor_x_hi(p), -corridor_length_lcl / 2.0,
              corridor_length_lcl / 2.0};
}

FreeSpace::FreeSpace(const ParkingLot& lot, const VehicleParams& params,
                     double inflation_radius)
    : radius_(inflation_radius),
      slot_margin_(params.width_vw / 2.0),
      bbox_(lot.bounding_box(params)) {
  // Workspace = bounding box minus the two wall strips above and below the
  // slot. The strips (and the slot back wall, via the bounding-box x_lo
  // side) get the half-width clearance: the cover radius exceeds the slot
  // half-width, so the full margin would leave no way into the slot.
  const double half_slot = lot.slot_width_lsw / 2.0;
  const double half_cl = lot.corridor_length_lcl / 2.0;
  const double cx_lo = lot.corridor_x_lo(params);
  if (half_slot < half_cl) {
    blocked_.push_back({Rect{bbox_.x_lo, cx_lo, half_slot, half_cl},
                        slot_margin_});
    blocked_.push_back({Rect{bbox_.x_lo, cx_lo, -half_cl, -half_slot},
                        slot_margin_});
  }
  for (const Rect& r : lot.obstacle_zones) blocked_.push_back({r, radius_});

  // Coarse sample of the corridor to detect a fully blocked lot.
  const double cx_hi = lot.corridor_x_hi(params);
  bool any_free = false;
  const int n = 40;
  for (int i = 0; i <= n && !any_free; ++i) {
    for (int j = 0; j <= n && !any_free; ++j) {
      const double x = cx_lo + (cx_hi - cx_lo) * i / n;
      const double y = -half_cl + lot.corridor_length_lcl * j / n;
      if (contains(x, y)) any_free = true;
    }
  }
  empty_ = !any_free;
}

bool FreeSpace::contains(double x, double y) const {
  if (x < bbox_.x_lo + slot_margin_ || x > bbox_.x_hi - radius_ ||
      y < bbox_.y_lo + radius_ || y > bbox_.y_hi - radius_) {
    return false;
  }
  for (const BlockedRect& b : blocked_) {
    if (point_rect_distance(x, y, b.rect) < b.margin) return false;
  }
  return true;
}

FreeSpace build_free_space(const ParkingLot& lot, const VehicleParams& params) {
  params.validate();
  lot.validate(params);
  return FreeSpace(lot, params, params.cover_radius());
}

bool circle_centers_in_free_space(const Pose& pose, const VehicleParams& params,
                                  const FreeSpace& fs) {
  const auto [rear, front] = footprint_circles(pose, params);
  return fs.contains(rear.center_x, rear.center_y) &&
         fs.contains(front.center_x, front.center_y);
}

}  // namespace parkset
