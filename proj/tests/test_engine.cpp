/* SPDX-License-Identifier: BSD-3-Clause */

#include "ransim/engine.hpp"
#include "ransim/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

using namespace ransim;

namespace {

std::size_t
attached_total(const Simulation& sim)
{
  std::size_t n = 0;
  for (const auto& c : sim.cells())
    n += c.attached_ues.size();
  return n;
}

ScenarioConfig
static_scenario()
{
  auto c = build_default_scenario(42);
  c.mobility.min_speed_mps = 0.0;
  c.mobility.max_speed_mps = 0.0;
  return c;
}

} // namespace

TEST_CASE("initial attachment")
{
  const Simulation sim(build_default_scenario(42));
  CHECK(sim.active_gnbs() == ActionBits::all_on(7));
  CHECK(sim.cells().size() == 8);
  CHECK(sim.ues().size() == 63);
  CHECK(attached_total(sim) == 63);
  for (std::size_t u = 0; u < 63; ++u)
    CHECK(sim.ues()[u].imsi == u + 1);
  CHECK(sim.clock().step_index == 0);
}

TEST_CASE("initial state repeats for a fixed seed")
{
  const Simulation a(build_default_scenario(42));
  const Simulation b(build_default_scenario(42));
  const Simulation c(build_default_scenario(43));
  REQUIRE(a.latest_cell_rows().size() == b.latest_cell_rows().size());
  CHECK(std::equal(a.latest_cell_rows().begin(), a.latest_cell_rows().end(), b.latest_cell_rows().begin()));
  CHECK(a.ues()[0].position == b.ues()[0].position);
  CHECK(!(a.ues()[0].position == c.ues()[0].position));
}

TEST_CASE("UEs are placed inside the area")
{
  const Simulation sim(build_default_scenario(7));
  for (const auto& ue : sim.ues())
    CHECK(sim.config().area_bounds.contains(ue.position));
}

TEST_CASE("traffic mix")
{
  const Simulation sim(build_default_scenario(42));
  std::size_t cbr = 0;
  for (const auto& ue : sim.ues())
    if (ue.traffic_class == TrafficClass::Cbr)
      ++cbr;
  CHECK(cbr == 32); // ceil(0.5 * 63)
}

TEST_CASE("unreachable attachment floor puts everyone on the anchor")
{
  auto c = build_default_scenario(42);
  c.min_rsrp_dbm = std::numeric_limits<double>::infinity();
  Simulation sim(c);
  CHECK(sim.cells()[7].attached_ues.size() == 63);
  sim.tick();
  CHECK(sim.cells()[7].attached_ues.size() == 63);
}

TEST_CASE("invalid config")
{
  auto c = build_default_scenario(42);
  c.n_ues = 0;
  CHECK_THROWS_AS(Simulation{c}, ConfigError);
}

TEST_CASE("explicit UE positions must match n_ues")
{
  const std::vector<Vec2> two{{0, 0}, {1, 1}};
  CHECK_THROWS_AS(Simulation(build_default_scenario(42), two), std::invalid_argument);
}

TEST_CASE("actions")
{
  Simulation sim(build_default_scenario(42));

  SUBCASE("all-ones is idempotent")
  {
    std::vector<std::size_t> before;
    for (const auto& ue : sim.ues())
      before.push_back(ue.serving_cell);
    sim.apply_action(ActionBits::all_on(7));
    for (std::size_t u = 0; u < 63; ++u)
      CHECK(sim.ues()[u].serving_cell == before[u]);
    for (const auto& c : sim.cells())
      CHECK(c.ho_out == 0);
  }
  SUBCASE("all-zeros hands everyone to the anchor")
  {
    sim.apply_action(ActionBits::all_off(7));
    CHECK(sim.cells()[7].attached_ues.size() == 63);
    const auto out = sim.tick();
    for (const auto& r : out.ue_rows)
      CHECK(r.serving_cell_id == 7);
    for (std::size_t c = 0; c < 7; ++c)
      {
        CHECK(out.cell_rows[c].is_active == 0.0);
        CHECK(out.cell_rows[c].num_attached_ues == 0.0);
        CHECK(out.cell_rows[c].power_w == 75.0);
        CHECK(out.cell_rows[c].dl_throughput_mbps == 0.0);
      }
  }
  SUBCASE("wrong length")
  {
    CHECK_THROWS_AS(sim.apply_action(ActionBits::all_on(6)), std::invalid_argument);
  }
}

TEST_CASE("deactivating a serving cell reattaches exactly its UEs")
{
  // 10 UEs close to gNB 1, the rest close to gNB 0.
  const auto config = static_scenario();
  std::vector<Vec2> positions;
  for (int i = 0; i < 10; ++i)
    positions.push_back({config.gnb_positions[1].x + 20.0 + i, config.gnb_positions[1].y + 15.0});
  for (int i = 10; i < 63; ++i)
    positions.push_back({config.gnb_positions[0].x - 30.0 - i, config.gnb_positions[0].y + 25.0});
  Simulation sim(config, positions);
  REQUIRE(sim.cells()[1].attached_ues.size() == 10);

  ActionBits action = ActionBits::all_on(7);
  action.set(1, false);
  sim.apply_action(action);
  CHECK(sim.cells()[1].attached_ues.empty());
  CHECK(sim.cells()[1].ho_out == 10);
  std::uint32_t ho_in = 0;
  std::uint32_t ho_out = 0;
  for (const auto& c : sim.cells())
    {
      ho_in += c.ho_in;
      ho_out += c.ho_out;
    }
  CHECK(ho_out == 10);
  CHECK(ho_in == 10);
  for (std::size_t u = 10; u < 63; ++u)
    CHECK(sim.ues()[u].serving_cell == 0);

  const auto out = sim.tick();
  CHECK(out.cell_rows[1].ho_out == 10.0);
  // Counters restart after the tick has reported them.
  CHECK(sim.cells()[1].ho_out == 0);
}

TEST_CASE("static UEs do not flap")
{
  Simulation sim(static_scenario());
  sim.tick();
  for (int k = 0; k < 50; ++k)
    {
      const auto out = sim.tick();
      for (const auto& row : out.cell_rows)
        {
          CHECK(row.ho_in == 0.0);
          CHECK(row.ho_out == 0.0);
        }
    }
}

TEST_CASE("tick output")
{
  Simulation sim(build_default_scenario(42));
  for (int k = 0; k < 20; ++k)
    {
      if (k == 5)
        sim.apply_action(ActionBits::from_string("1010110"));
      const auto out = sim.tick();
      REQUIRE(out.ue_rows.size() == 63);
      REQUIRE(out.cell_rows.size() == 8);
      CHECK(out.ue_rows.front().timestamp_ms == k * 100);
      CHECK(out.cell_rows.front().timestamp_ms == k * 100);

      double cell_sum = 0.0;
      double ue_sum = 0.0;
      double attached = 0.0;
      for (const auto& r : out.cell_rows)
        {
          cell_sum += r.dl_throughput_mbps;
          attached += r.num_attached_ues;
          CHECK(r.prb_utilization >= 0.0);
          CHECK(r.prb_utilization <= 1.0);
          CHECK(r.qos_violation_ratio >= 0.0);
          CHECK(r.qos_violation_ratio <= 1.0);
        }
      for (const auto& r : out.ue_rows)
        {
          ue_sum += r.dl_throughput_mbps;
          CHECK(r.dl_throughput_mbps <= r.demand_mbps);
          CHECK(r.backlog_mbits >= 0.0);
        }
      CHECK(cell_sum == ue_sum);
      CHECK(cell_sum == sim.total_served_mbps());
      CHECK(attached == 63.0);
    }
  CHECK(sim.clock().step_index == 20);
  CHECK(sim.clock().sim_time_ms == 2000);
}

TEST_CASE("power bookkeeping")
{
  Simulation sim(build_default_scenario(42));
  const auto out = sim.tick();
  double total = 0.0;
  for (const auto& c : sim.cells())
    {
      CHECK(c.power_w == doctest::Approx(130.0 + 4.7 * 20.0 * c.load));
      CHECK(c.energy_j == doctest::Approx(c.power_w * 0.1));
      total += c.power_w;
    }
  CHECK(sim.total_power_w() == doctest::Approx(total));
  CHECK(out.cell_rows[0].energy_j_last_period == doctest::Approx(out.cell_rows[0].power_w * 0.1));
}

TEST_CASE("quantized rates")
{
  CHECK(quantize_rate_mbps(1.5) == 1.5);
  CHECK(quantize_rate_mbps(0.0) == 0.0);
  const double q = quantize_rate_mbps(std::acos(-1.0));
  CHECK(q <= std::acos(-1.0));
  CHECK(std::acos(-1.0) - q < kRateQuantumMbps);
  CHECK(std::fmod(q, kRateQuantumMbps) == 0.0);
}

TEST_CASE("simulations are values")
{
  Simulation a(build_default_scenario(42));
  a.tick();
  Simulation b = a;
  for (int k = 0; k < 10; ++k)
    {
      const auto x = a.tick();
      const auto y = b.tick();
      CHECK(x.ue_rows == y.ue_rows);
      CHECK(x.cell_rows == y.cell_rows);
    }
}
