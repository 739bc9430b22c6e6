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

#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "parkset/pipeline.hpp"
#include "parkset/pose_selection.hpp"

namespace {

int run(parkset::PipelineMode mode, const std::string& scenario_path,
        const parkset::PipelineOptions& options) {
  using namespace parkset;
  try {
    const Scenario scn = load_scenario(scenario_path);
    const PipelineResult result = run_pipeline(scn, mode, options);
    std::cout << "scenario: " << scn.name << '\n'
              << "S_r members:   " << result.s_r.count() << '\n'
              << "S_cfr members: " << result.s_cfr.count() << '\n';
    if (result.has_plan) {
      std::printf("intermediate pose: (%.4f, %.4f, %.4f)\n",
                  result.intermediate.x, result.intermediate.y,
                  result.intermediate.psi);
      std::cout << "total gear shifts: " << result.total_gear_shifts << '\n';
    }
    if (result.has_sim) {
      std::printf(
          "tracking rmse: lateral %.4f m, heading %.4f rad "
          "(max %.4f m / %.4f rad)\n",
          result.metrics.rmse_lateral, result.metrics.rmse_heading,
          result.metrics.max_err_lateral, result.metrics.max_err_heading);
    }
    std::cout << "artifacts written to " << options.out_dir << '\n';
    return 0;
  } catch (const NoFeasibleIntermediate& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const NoPathError& e) {
    std::cerr << "error: " << e.what() << " (expansions: " << e.expansions
              << ")\n";
    return 3;
  } catch (const TrackingFailure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reachable-set based automated vertical parking planner"};
  app.require_subcommand(1);

  std::string scenario_path;
  parkset::PipelineOptions options;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::vector<int> grid_counts;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("scenario", scenario_path, "Scenario JSON file")
        ->required();
    sub->add_option("--out", options.out_dir, "Output directory");
    sub->add_option("--cache-dir", options.cache_dir,
                    "Reachable-set cache directory");
    sub->add_option("--seed", seed, "Disturbance RNG seed override")
        ->each([&](const std::string&) { seed_set = true; });
    sub->add_option("--grid", grid_counts,
                    "Grid counts NX,NY,NPSI")
        ->delimiter(',')
        ->expected(3);
    sub->add_option("--threads", options.threads,
                    "Worker threads for the grid sweep (0 = auto)");
  };

  auto* reachset = app.add_subcommand("reachset", "Compute S_r and S_cfr");
  auto* plan = app.add_subcommand("plan", "Reachset + pose selection + paths");
  auto* simulate =
      app.add_subcommand("simulate", "Plan + closed-loop tracking simulation");
  add_common(reachset);
  add_common(plan);
  add_common(simulate);

  CLI11_PARSE(app, argc, argv);

  if (seed_set) options.seed = seed;
  if (!grid_counts.empty()) {
    options.grid =
        parkset::GridCounts{grid_counts[0], grid_counts[1], grid_counts[2]};
  }

  parkset::PipelineMode mode = parkset::PipelineMode::kReachset;
  if (plan->parsed()) mode = parkset::PipelineMode::kPlan;
  if (simulate->parsed()) mode = parkset::PipelineMode::kSimulate;
  return run(mode, scenario_path, options);
}
