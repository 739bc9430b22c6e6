#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "parkset/scenario.hpp"

using namespace parkset;
using nlohmann::json;

namespace {

std::string fixture(const std::string& name) {
  return std::string(PARKSET_SCENARIO_DIR) + "/" + name;
}

json minimal() {
  return json{{"lot", json::object()},
              {"vehicle", json::object()},
              {"start_pose", {{"x", 7.0}, {"y", -4.0}, {"psi", 1.2}}}};
}

}  // namespace

TEST_CASE("bundled fixtures load and validate") {
  for (const char* name :
       {"scenario_7m_noobs.json", "scenario_7m_top.json",
        "scenario_7m_bottom.json", "scenario_6m_noobs.json",
        "scenario_6m_top.json", "scenario_6m_bottom.json"}) {
    const Scenario s = load_scenario(fixture(name));
    CHECK(!s.name.empty());
    CHECK(s.lot.slot_length_lsl == doctest::Approx(5.5));
  }
}

TEST_CASE("fixture geometry reaches the loaded scenario") {
  const Scenario s = load_scenario(fixture("scenario_7m_top.json"));
  CHECK(s.lot.corridor_width_lcw == doctest::Approx(7.0));
  REQUIRE(s.lot.obstacle_zones.size() == 1);
  CHECK(s.lot.obstacle_zones[0].x_lo == doctest::Approx(9.0));
  CHECK(s.lot.obstacle_zones[0].y_hi == doctest::Approx(6.0));
  CHECK(s.start_pose.x == doctest::Approx(7.0));
  CHECK(s.start_pose.y == doctest::Approx(-4.3));
  // Unspecified tuning sections resolve to the documented defaults.
  CHECK(s.weights.alpha4 == doctest::Approx(5.0));
  CHECK(s.search.psi_bins == 72);
  CHECK(s.longitudinal.tau == doctest::Approx(0.2));
  CHECK(s.ts == doctest::Approx(0.01));
  CHECK(s.grid_counts.n_x == 28);
  CHECK(s.grid_counts.n_y == 121);
  CHECK(s.grid_counts.n_psi == 63);
}

TEST_CASE("minimal scenario resolves every default and echoes stably") {
  const Scenario s = scenario_from_json(minimal());
  CHECK(s.lot.corridor_width_lcw == doctest::Approx(7.0));
  CHECK(s.vehicle.wheelbase_l == doctest::Approx(2.630));
  CHECK(s.clothoid.reverse_speed == doctest::Approx(0.5));
  CHECK(s.weights.psi_pref == doctest::Approx(0.4));
  CHECK(s.disturbance.bound_xy == doctest::Approx(0.001));

  // Feeding the echo back reproduces the same fully resolved config.
  const Scenario round = scenario_from_json(s.to_json());
  CHECK(round.to_json() == s.to_json());
}

TEST_CASE("infeasible corridor is rejected with the lot field path") {
  json j = minimal();
  j["lot"]["corridor_width"] = 3.0;
  j["start_pose"] = {{"x", 6.0}, {"y", -4.0}, {"psi", 1.2}};
  try {
    scenario_from_json(j);
    FAIL("expected ScenarioError");
  } catch (const ScenarioError& e) {
    CHECK(e.field_path == "lot");
  }
}

TEST_CASE("errors carry the offending field path") {
  json j = minimal();
  j["weights"]["alpha1"] = "heavy";
  try {
    scenario_from_json(j);
    FAIL("expected ScenarioError");
  } catch (const ScenarioError& e) {
    CHECK(e.field_path == "weights.alpha1");
  }

  json no_lot = minimal();
  no_lot.erase("lot");
  try {
    scenario_from_json(no_lot);
    FAIL("expected ScenarioError");
  } catch (const ScenarioError& e) {
    CHECK(e.field_path == "lot");
  }

  json colliding = minimal();
  colliding["lot"]["obstacle_zones"] = json::array(
      {{{"x_lo", 6.0}, {"x_hi", 8.0}, {"y_lo", -5.0}, {"y_hi", -3.0}}});
  try {
    scenario_from_json(colliding);
    FAIL("expected ScenarioError");
  } catch (const ScenarioError& e) {
    CHECK(e.field_path == "start_pose");
  }

  json bad_version = minimal();
  bad_version["schema_version"] = 2;
  CHECK_THROWS_AS(scenario_from_json(bad_version), ScenarioError);
}

TEST_CASE("reachset hash tracks only reach-set-relevant fields") {
  const Scenario base = scenario_from_json(minimal());
  const std::string h0 = base.reachset_hash();
  CHECK(h0.size() == 16);
  CHECK(h0 == base.reachset_hash());

  json narrowed = minimal();
  narrowed["lot"]["corridor_width"] = 6.0;
  CHECK(scenario_from_json(narrowed).reachset_hash() != h0);

  json reweighted = minimal();
  reweighted["weights"] = {{"alpha1", 3.0}};
  CHECK(scenario_from_json(reweighted).reachset_hash() == h0);

  json reseeded = minimal();
  reseeded["disturbance"] = {{"seed", 99}};
  CHECK(scenario_from_json(reseeded).reachset_hash() == h0);
}

TEST_CASE("missing or malformed files raise ScenarioError") {
  CHECK_THROWS_AS(load_scenario("/nonexistent/path.json"), ScenarioError);
}
