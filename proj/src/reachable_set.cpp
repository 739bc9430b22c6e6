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

#include "parkset/reachable_set.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <numbers>
#include <numeric>
#include <thread>

#include <nlohmann/json.hpp>

namespace parkset {

void GridSpec::validate() const {
  if (!(x_lo < x_hi && y_lo < y_hi && psi_lo < psi_hi)) {
    throw std::invalid_argument("grid bounds must satisfy lo < hi");
  }
  if (n_x < 2 || n_y < 2 || n_psi < 2) {
    throw std::invalid_argument("grid needs at least 2 points per axis");
  }
}

std::size_t ReachableSet::count() const {
  return std::accumulate(bits_.begin(), bits_.end(), std::size_t{0});
}

std::vector<GridIndex> ReachableSet::members() const {
  std::vector<GridIndex> out;
  for (int ix = 0; ix < spec_.n_x; ++ix) {
    for (int iy = 0; iy < spec_.n_y; ++iy) {
      for (int ipsi = 0; ipsi < spec_.n_psi; ++ipsi) {
        if (bits_[spec_.flat_index(ix, iy, ipsi)]) {
          out.push_back(GridIndex{ix, iy, ipsi});
        }
      }
    }
  }
  return out;
}

GridSpec build_grid(const ParkingLot& lot, const VehicleParams& params,
                    const GridCounts& counts) {
  GridSpec spec;
  const double base = lot.slot_length_lsl - params.rear_overhang_lr;
  spec.x_lo = base + params.length_vl / 2.0;
  spec.x_hi = base + lot.corridor_width_lcw - params.length_vl / 2.0;
  spec.y_lo = -lot.corridor_length_lcl / 2.0;
  spec.y_hi = lot.corridor_length_lcl / 2.0;
  spec.psi_lo = -std::numbers::pi / 2.0;
  spec.psi_hi = std::numbers::pi / 2.0;
  spec.n_x = counts.n_x;
  spec.n_y = counts.n_y;
  spec.n_psi = counts.n_psi;
  if (!(spec.x_lo < spec.x_hi)) {
    throw std::invalid_argument(
        "infeasible corridor: narrower than the vehicle length");
  }
  spec.validate();
  return spec;
}

std::pair<ReachableSet, ReachableSet> compute_reachable_sets(
    const GridSpec& spec, const VehicleParams& params, const FreeSpace& fs,
    const ClothoidConfig& cfg, double ts, const ReachableOptions& opt) {
  spec.validate();
  cfg.validate();
  ReachableSet s_r(spec, SetKind::kReachable);
  ReachableSet s_cfr(spec, SetKind::kCollisionFree);

  const std::size_t total = spec.size();
  unsigned n_threads = opt.threads > 0
                           ? static_cast<unsigned>(opt.threads)
                           : std::max(1u, std::thread::hardware_concurrency());

  std::atomic<std::size_t> cursor{0};
  auto worker = [&]() {
    constexpr std::size_t kChunk = 256;
    for (;;) {
      const std::size_t begin = cursor.fetch_add(kChunk);
      if (begin >= total) return;
      const std::size_t end = std::min(begin + kChunk, total);
      for (std::size_t flat = begin; flat < end; ++flat) {
        const int ipsi = static_cast<int>(flat % spec.n_psi);
        const int iy = static_cast<int>(flat / spec.n_psi % spec.n_y);
        const int ix = static_cast<int>(flat / spec.n_psi / spec.n_y);
        const Pose start{spec.x_at(ix), spec.y_at(iy), spec.psi_at(ipsi)};
        if (!(start.x > 0.0) ||
            std::abs(start.psi) >= std::numbers::pi / 2.0) {
          continue;
        }
        const LocalPath path =
            rollout_parking_path(start, params, fs, cfg, ts);
        if (!path.reached_goal) continue;
        const GridIndex idx{ix, iy, ipsi};
        s_r.insert(idx);
        const bool free_path =
            opt.sticky_collision
                ? path.collision_free
                : circle_centers_in_free_space(path.states.back(), params, fs);
        if (free_path) s_cfr.insert(idx);
      }
    }
  };

  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return {std::move(s_r), std::move(s_cfr)};
}

namespace {

std::vector<std::uint8_t> pack_bits(const std::vector<std::uint8_t>& bits) {
  std::vector<std::uint8_t> packed((bits.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) packed[i / 8] |= static_cast<std::uint8_t>(1u << (i % 8));
  }
  return packed;
}

void unpack_bits(const std::vector<std::uint8_t>& packed,
                 std::vector<std::uint8_t>& bits) {
  for (std::size_t i = 0; i < bits.size(); ++i) {
    bits[i] = (packed[i / 8] >> (i % 8)) & 1u;
  }
}

nlohmann::json spec_to_json(const GridSpec& s) {
  return nlohmann::json{{"x_lo", s.x_lo},     {"x_hi", s.x_hi},
                        {"y_lo", s.y_lo},     {"y_hi", s.y_hi},
                        {"psi_lo", s.psi_lo}, {"psi_hi", s.psi_hi},
                        {"n_x", s.n_x},       {"n_y", s.n_y},
                        {"n_psi", s.n_psi}};
}

}  // namespace

void save_reachable_cache(const std::string& path, const std::string& hash,
                          const ReachableSet& s_r, const ReachableSet& s_cfr) {
  nlohmann::json header{{"format", "parkset-reachcache-v1"},
                        {"hash", hash},
                        {"spec", spec_to_json(s_r.spec())}};
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open cache file for write: " + path);
  out << header.dump() << '\n';
  for (const auto* set : {&s_r, &s_cfr}) {
    const auto packed = pack_bits(set->raw_bits());
    out.write(reinterpret_cast<const char*>(packed.data()),
              static_cast<std::streamsize>(packed.size()));
  }
}

bool load_reachable_cache(const std::string& path, const std::string& hash,
                          ReachableSet& s_r, ReachableSet& s_cfr) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::string header_line;
  if (!std::getline(in, header_line)) return false;
  nlohmann::json header = nlohmann::json::parse(header_line, nullptr, false);
  if (header.is_discarded() ||
      header.value("format", "") != "parkset-reachcache-v1" ||
      header.value("hash", "") != hash) {
    return false;
  }
  const auto js = header.at("spec");
  GridSpec spec;
  spec.x_lo = js.at("x_lo");
  spec.x_hi = js.at("x_hi");
  spec.y_lo = js.at("y_lo");
  spec.y_hi = js.at("y_hi");
  spec.psi_lo = js.at("psi_lo");
  spec.psi_hi = js.at("psi_hi");
  spec.n_x = js.at("n_x");
  spec.n_y = js.at("n_y");
  spec.n_psi = js.at("n_psi");
  s_r = ReachableSet(spec, SetKind::kReachable);
  s_cfr = ReachableSet(spec, SetKind::kCollisionFree);
  const std::size_t packed_size = (spec.size() + 7) / 8;
  std::vector<std::uint8_t> packed(packed_size);
  for (auto* set : {&s_r, &s_cfr}) {
    if (!in.read(reinterpret_cast<char*>(packed.data()),
                 static_cast<std::streamsize>(packed_size))) {
      return false;
    }
    unpack_bits(packed, set->raw_bits());
  }
  return true;
}

}  // namespace parkset
