/* SPDX-License-Identifier: BSD-3-Clause */

#ifndef RANSIM_SCENARIO_HPP
#define RANSIM_SCENARIO_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace ransim {

struct Vec2
{
  double x{0.0};
  double y{0.0};

  friend bool operator==(const Vec2&, const Vec2&) = default;
};

double distance(Vec2 a, Vec2 b) noexcept;

/// Axis-aligned rectangle, meters. Bounds are inclusive.
struct Rect
{
  double x_min{0.0};
  double y_min{0.0};
  double x_max{0.0};
  double y_max{0.0};

  bool contains(Vec2 p) const noexcept
  {
    return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
  }

  friend bool operator==(const Rect&, const Rect&) = default;
};

/// Downlink traffic mix. CBR stands in for UDP flows, elastic for TCP.
struct TrafficConfig
{
  double cbr_fraction{0.5};
  std::vector<double> cbr_rates_mbps{0.75, 1.5, 3.0};
  double elastic_cap_mbps{20.0};

  friend bool operator==(const TrafficConfig&, const TrafficConfig&) = default;
};

/// Linear load-dependent base station power model parameters.
struct RandomWalkParams
{
  double min_speed_mps{1.0};
  double max_speed_mps{3.0};
  double epoch_s{2.0};
  friend bool operator==(const RandomWalkParams&, const RandomWalkParams&) = default;
};

struct EnergyParams
{
  double p0_w{130.0};
  double delta_p{4.7};
  double p_max_tx_w{20.0};
  double p_sleep_w{75.0};

  friend bool operator==(const EnergyParams&, const EnergyParams&) = default;
};

struct RewardWeights
{
  double w_throughput{1.0};
  double w_energy{0.5};
  double c_activation{0.05};
  double c_switch{0.05};
  double tau_s{1.0};
  double t_max_mbps{500.0};
  double p_max_w{1792.0};

  friend bool operator==(const RewardWeights&, const RewardWeights&) = default;
};

/**
 * Immutable description of one simulation: topology, radio, traffic,
 * energy and reward parameters.
 *
 * Cell ids are 0..n_gnbs-1 for the gNBs(in gnb_positions order); the LTE
 * anchor takes id n_gnbs.
 */
struct ScenarioConfig
{
  std::size_t n_gnbs{7};
  std::vector<Vec2> gnb_positions;
  Vec2 lte_anchor_position{};
  double inter_site_distance_m{1700.0};
  std::size_t n_ues{63};
  Rect area_bounds{-2550.0, -2550.0, 2550.0, 2550.0};
  double carrier_freq_ghz{3.5};
  double lte_freq_ghz{0.85};
  double bandwidth_hz{20e6};
  double lte_bandwidth_hz{10e6};
  double gnb_tx_power_dbm{30.0};
  double lte_tx_power_dbm{43.0};
  double gnb_height_m{10.0};
  double ue_height_m{1.5};
  double noise_figure_db{7.0};
  double control_period_ms{100.0};
  std::uint64_t episode_steps{600};
  TrafficConfig traffic{};
  RandomWalkParams mobility{};
  EnergyParams energy{};
  RewardWeights reward{};
  double min_rsrp_dbm{-110.0};
  double hysteresis_db{3.0};
  double max_spectral_efficiency{7.4};
  std::uint64_t seed{42};

  double control_period_s() const noexcept { return control_period_ms / 1000.0; }
  std::size_t anchor_id() const noexcept { return n_gnbs; }
  std::size_t n_cells() const noexcept { return n_gnbs + 1; }

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// Upper bound on total network power: every base station(anchor
/// included) fully loaded.
double max_network_power_w(std::size_t n_gnbs, const EnergyParams& params) noexcept;

/**
 * Dense-urban NSA layout: LTE anchor and one gNB at the origin, six gNBs on
 * a hexagon of radius 1700 m, 63 UEs in a 5.1 km square.
 */
ScenarioConfig build_default_scenario(std::uint64_t seed);

/// Every violated invariant, one message each. Empty means valid.
std::vector<std::string> validate(const ScenarioConfig& config);

// JSON mirrors the field names above. Keys missing from a document keep the
// default scenario's value; unknown keys are rejected.
void to_json(nlohmann::json& j, const ScenarioConfig& config);
void from_json(const nlohmann::json& j, ScenarioConfig& config);

ScenarioConfig load_scenario(const std::filesystem::path& path);
void save_scenario(const ScenarioConfig& config, const std::filesystem::path& path);

} // namespace ransim

#endif
