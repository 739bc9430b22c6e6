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
#include <string>
#include <utility>
#include <vector>

#include "parkset/clothoid.hpp"
#include "parkset/core_model.hpp"
#include "parkset/environment.hpp"

namespace parkset {

/// Uniform, endpoint-inclusive 3-D grid over (x, y, psi).
struct GridSpec {
  double x_lo{0.0}, x_hi{0.0};
  double y_lo{0.0}, y_hi{0.0};
  double psi_lo{0.0}, psi_hi{0.0};
  int n_x{2}, n_y{2}, n_psi{2};

  void validate() const;
  std::size_t size() const {
    return static_cast<std::size_t>(n_x) * n_y * n_psi;
  }
  double x_at(int i) const { return x_lo + (x_hi - x_lo) * i / (n_x - 1); }
  double y_at(int i) const { return y_lo + (y_hi - y_lo) * i / (n_y - 1); }
  double psi_at(int i) const {
    return psi_lo + (psi_hi - psi_lo) * i / (n_psi - 1);
  }
  std::size_t flat_index(int ix, int iy, int ipsi) const {
    return (static_cast<std::size_t>(ix) * n_y + iy) * n_psi + ipsi;
  }
};

struct GridIndex {
  int ix{0};
  int iy{0};
  int ipsi{0};
  auto operator<=>(const GridIndex&) const = default;
};

enum class SetKind { kReachable, kCollisionFree };

/// Grid-indexed pose set (S_r or S_cfr).
class ReachableSet {
 public:
  ReachableSet() = default;
  ReachableSet(GridSpec spec, SetKind kind)
      : spec_(spec), kind_(kind), bits_(spec.size(), 0) {}

  const GridSpec& spec() const { return spec_; }
  SetKind kind() const { return kind_; }

  void insert(const GridIndex& idx) { bits_[flat(idx)] = 1; }
  bool contains(const GridIndex& idx) const { return bits_[flat(idx)] != 0; }
  std::size_t count() const;
  std::vector<GridIndex> members() const;
  Pose pose_at(const GridIndex& idx) const {
    return Pose{spec_.x_at(idx.ix), spec_.y_at(idx.iy), spec_.psi_at(idx.ipsi)};
  }

  const std::vector<std::uint8_t>& raw_bits() const { return bits_; }
  std::vector<std::uint8_t>& raw_bits() { return bits_; }

 private:
  std::size_t flat(const GridIndex& idx) const {
    return spec_.flat_index(idx.ix, idx.iy, idx.ipsi);
  }
  GridSpec spec_;
  SetKind kind_{SetKind::kReachable};
  std::vector<std::uint8_t> bits_;
};

struct GridCounts {
  int n_x{28};
  int n_y{121};
  int n_psi{63};
};

/// Grid bounds from the lot geometry: x spans the corridor positions where
/// the whole vehicle fits, y spans the corridor length, psi spans +-pi/2.
GridSpec build_grid(const ParkingLot& lot, const VehicleParams& params,
                    const GridCounts& counts);

struct ReachableOptions {
  /// Whole-path collision accounting. When false, only the final pose of a
  /// rollout decides collision freedom (the literal pseudocode behavior).
  bool sticky_collision{true};
  int threads{0};  // 0 = hardware concurrency
};

std::pair<ReachableSet, ReachableSet> compute_reachable_sets(
    const GridSpec& spec, const VehicleParams& params, const FreeSpace& fs,
    const ClothoidConfig& cfg, double ts, const ReachableOptions& opt = {});

/// Cache file: one JSON header line (hash, spec, config echo) followed by
/// the packed member bitsets of S_r and S_cfr in row-major index order.
void save_reachable_cache(const std::string& path, const std::string& hash,
                          const ReachableSet& s_r, const ReachableSet& s_cfr);
/// Returns false when the file is missing or the hash does not match.
bool load_reachable_cache(const std::string& path, const std::string& hash,
                          ReachableSet& s_r, ReachableSet& s_cfr);

}  // namespace parkset
