/* SPDX-License-Identifier: BSD-3-Clause */

#include "ransim/errors.hpp"
#include "ransim/scenario.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

using namespace ransim;

TEST_CASE("default scenario layout")
{
  const auto c = build_default_scenario(42);
  CHECK(c.n_gnbs == 7);
  CHECK(c.n_ues == 63);
  CHECK(c.control_period_ms == 100.0);
  CHECK(c.gnb_positions.size() == 7);
  CHECK(c.anchor_id() == 7);
  CHECK(c.n_cells() == 8);
  CHECK(distance(c.gnb_positions[1], c.lte_anchor_position) == doctest::Approx(1700.0).epsilon(1e-12));
  for (std::size_t i = 1; i < 7; ++i)
    CHECK(distance(c.gnb_positions[i], c.gnb_positions[0]) == doctest::Approx(1700.0).epsilon(1e-12));
  // Adjacent ring sites of a hexagon are one inter-site distance apart too.
  CHECK(distance(c.gnb_positions[1], c.gnb_positions[2]) == doctest::Approx(1700.0).epsilon(1e-12));
}

TEST_CASE("topology does not depend on the seed")
{
  const auto a = build_default_scenario(1);
  const auto b = build_default_scenario(2);
  CHECK(a.gnb_positions == b.gnb_positions);
  CHECK(a.lte_anchor_position == b.lte_anchor_position);
  CHECK(a.seed == 1);
  CHECK(b.seed == 2);
}

TEST_CASE("reward normalization tracks the network size")
{
  const auto c = build_default_scenario(42);
  CHECK(max_network_power_w(7, c.energy) == doctest::Approx(1792.0));
  CHECK(c.reward.p_max_w == doctest::Approx(1792.0));
}

TEST_CASE("validate")
{
  SUBCASE("default config is valid")
  {
    CHECK(validate(build_default_scenario(42)).empty());
  }
  SUBCASE("zero gNBs")
  {
    auto c = build_default_scenario(42);
    c.n_gnbs = 0;
    const auto v = validate(c);
    REQUIRE(v.size() == 1);
    CHECK(v[0] == "n_gnbs must be ≥ 1");
  }
  SUBCASE("gNB outside the area names that gNB")
  {
    auto c = build_default_scenario(42);
    c.gnb_positions[3] = Vec2{9000.0, 0.0};
    const auto v = validate(c);
    REQUIRE(v.size() == 1);
    CHECK(v[0].find("gNB 3") != std::string::npos);
  }
  SUBCASE("several violations are all reported")
  {
    auto c = build_default_scenario(42);
    c.control_period_ms = 0.0;
    c.traffic.cbr_fraction = 1.5;
    c.energy.p_sleep_w = 500.0;
    CHECK(validate(c).size() == 3);
  }
  SUBCASE("position count must match n_gnbs")
  {
    auto c = build_default_scenario(42);
    c.gnb_positions.pop_back();
    CHECK(validate(c).size() == 1);
  }
}

TEST_CASE("json round trip")
{
  auto c = build_default_scenario(7);
  c.hysteresis_db = 2.5;
  c.traffic.cbr_rates_mbps = {1.0, 2.0};
  const nlohmann::json j = c;
  CHECK(j.get<ScenarioConfig>() == c);
}

TEST_CASE("json overrides start from the seeded default")
{
  const auto c = nlohmann::json::parse(R"({"seed": 9, "episode_steps": 50})").get<ScenarioConfig>();
  auto expected = build_default_scenario(9);
  expected.episode_steps = 50;
  CHECK(c == expected);
}

TEST_CASE("json rejects unknown fields")
{
  CHECK_THROWS_AS(nlohmann::json::parse(R"({"n_cellz": 3})").get<ScenarioConfig>(), ConfigError);
  CHECK_THROWS_AS(nlohmann::json::parse(R"({"energy": {"p1_w": 3}})").get<ScenarioConfig>(), ConfigError);
}

TEST_CASE("json p_max_w follows n_gnbs unless given")
{
  const nlohmann::json doc = nlohmann::json::parse(
      R"({"n_gnbs": 2, "gnb_positions": [[0, 0], [1700, 0]]})");
  CHECK(doc.get<ScenarioConfig>().reward.p_max_w == doctest::Approx(3 * 224.0));
  nlohmann::json explicit_doc = doc;
  explicit_doc["reward"] = {{"p_max_w", 1568.0}};
  CHECK(explicit_doc.get<ScenarioConfig>().reward.p_max_w == 1568.0);
}

TEST_CASE("scenario files")
{
  const auto dir = std::filesystem::temp_directory_path() / "ransim-test-scenario";
  std::filesystem::create_directories(dir);
  const auto c = build_default_scenario(5);
  save_scenario(c, dir / "s.json");
  CHECK(load_scenario(dir / "s.json") == c);

  std::ofstream(dir / "bad.json") << "{ not json";
  CHECK_THROWS_AS(load_scenario(dir / "bad.json"), ConfigError);
  CHECK_THROWS_AS(load_scenario(dir / "missing.json"), IoError);
}
