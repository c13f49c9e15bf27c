/* SPDX-License-Identifier: BSD-3-Clause */

#include "ransim/scenario.hpp"

#include "ransim/errors.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string_view>

namespace ransim {

using nlohmann::json;

ConfigError::ConfigError(std::vector<std::string> violations)
  : std::runtime_error([&] {
      std::string what = "invalid scenario:";
      for (const auto& v : violations)
        what += "\n  " + v;
      return what;
    }()),
    m_violations(std::move(violations))
{
}

double
distance(Vec2 a, Vec2 b) noexcept
{
  return std::hypot(a.x - b.x, a.y - b.y);
}

double
max_network_power_w(std::size_t n_gnbs, const EnergyParams& params) noexcept
{
  return static_cast<double>(n_gnbs + 1) * (params.p0_w + params.delta_p * params.p_max_tx_w);
}

ScenarioConfig
build_default_scenario(std::uint64_t seed)
{
  ScenarioConfig config;
  config.seed = seed;
  config.gnb_positions.push_back({0.0, 0.0});
  for (int k = 0; k < 6; ++k)
    {
      const double angle = k * std::numbers::pi / 3.0;
      config.gnb_positions.push_back(
          {config.inter_site_distance_m * std::cos(angle), config.inter_site_distance_m * std::sin(angle)});
    }
  config.n_gnbs = config.gnb_positions.size();
  config.reward.p_max_w = max_network_power_w(config.n_gnbs, config.energy);
  return config;
}

std::vector<std::string>
validate(const ScenarioConfig& c)
{
  std::vector<std::string> out;
  auto require = [&out](bool ok, std::string message) {
    if (!ok)
      out.push_back(std::move(message));
  };

  require(c.n_gnbs >= 1, "n_gnbs must be ≥ 1");
  if (c.n_gnbs >= 1)
    require(c.gnb_positions.size() == c.n_gnbs, "gnb_positions must hold exactly n_gnbs entries (got "
                                                    + std::to_string(c.gnb_positions.size()) + ")");
  require(c.n_ues >= 1, "n_ues must be ≥ 1");
  require(c.control_period_ms > 0.0, "control_period_ms must be > 0");
  require(c.episode_steps > 0, "episode_steps must be > 0");
  require(c.area_bounds.x_min < c.area_bounds.x_max && c.area_bounds.y_min < c.area_bounds.y_max,
          "area_bounds must have positive extent");
  for (std::size_t i = 0; i < c.gnb_positions.size(); ++i)
    require(c.area_bounds.contains(c.gnb_positions[i]), "gnb_positions[" + std::to_string(i) + "] (gNB "
                                                            + std::to_string(i) + ") lies outside area_bounds");
  require(c.area_bounds.contains(c.lte_anchor_position), "lte_anchor_position lies outside area_bounds");
  require(c.bandwidth_hz > 0.0, "bandwidth_hz must be > 0");
  require(c.lte_bandwidth_hz > 0.0, "lte_bandwidth_hz must be > 0");
  require(c.max_spectral_efficiency > 0.0, "max_spectral_efficiency must be > 0");
  require(c.carrier_freq_ghz > 0.0, "carrier_freq_ghz must be > 0");
  require(c.lte_freq_ghz > 0.0, "lte_freq_ghz must be > 0");
  require(c.gnb_height_m > 0.0, "gnb_height_m must be > 0");
  require(c.ue_height_m >= 1.5, "ue_height_m must be ≥ 1.5");
  require(c.hysteresis_db >= 0.0, "hysteresis_db must be ≥ 0");
  require(c.inter_site_distance_m > 0.0, "inter_site_distance_m must be > 0");

  const auto& t = c.traffic;
  require(t.cbr_fraction >= 0.0 && t.cbr_fraction <= 1.0, "traffic.cbr_fraction must lie in [0,1]");
  require(!t.cbr_rates_mbps.empty() || t.cbr_fraction == 0.0, "traffic.cbr_rates_mbps must not be empty");
  for (std::size_t i = 0; i < t.cbr_rates_mbps.size(); ++i)
    require(t.cbr_rates_mbps[i] > 0.0, "traffic.cbr_rates_mbps[" + std::to_string(i) + "] must be > 0");
  require(t.elastic_cap_mbps > 0.0, "traffic.elastic_cap_mbps must be > 0");

  const auto& m = c.mobility;
  require(m.min_speed_mps >= 0.0 && m.min_speed_mps <= m.max_speed_mps,
          "mobility speeds must satisfy 0 ≤ min_speed_mps ≤ max_speed_mps");
  require(m.epoch_s > 0.0, "mobility.epoch_s must be > 0");

  const auto& e = c.energy;
  require(e.p0_w >= 0.0 && e.delta_p >= 0.0 && e.p_max_tx_w >= 0.0 && e.p_sleep_w >= 0.0,
          "energy parameters must be ≥ 0");
  require(e.p_sleep_w < e.p0_w, "energy.p_sleep_w must be < energy.p0_w");

  const auto& r = c.reward;
  require(r.w_throughput >= 0.0 && r.w_energy >= 0.0 && r.c_activation >= 0.0 && r.c_switch >= 0.0,
          "reward weights must be ≥ 0");
  require(r.tau_s > 0.0, "reward.tau_s must be > 0");
  require(r.t_max_mbps > 0.0, "reward.t_max_mbps must be > 0");
  require(r.p_max_w > 0.0, "reward.p_max_w must be > 0");
  return out;
}

// ---------------------------------------------------------------- JSON

namespace {

void
reject_unknown(const json& j, std::initializer_list<std::string_view> known, std::string_view where)
{
  if (!j.is_object())
    throw ConfigError({std::string(where.empty() ? "scenario" : where) + " must be a JSON object"});
  for (const auto& item : j.items())
    {
      bool found = false;
      for (auto k : known)
        found = found || item.key() == k;
      if (!found)
        throw ConfigError({"unknown field '" + std::string(where) + (where.empty() ? "" : ".") + item.key() + "'"});
    }
}

template <typename T>
void
read(const json& j, const char* key, T& out)
{
  if (auto it = j.find(key); it != j.end())
    it->get_to(out);
}

json
vec_json(Vec2 v)
{
  return json::array({v.x, v.y});
}

Vec2
vec_from(const json& j)
{
  if (!j.is_array() || j.size() != 2)
    throw ConfigError({"coordinates must be [x, y] arrays"});
  return {j[0].get<double>(), j[1].get<double>()};
}

} // namespace

void
to_json(json& j, const ScenarioConfig& c)
{
  json positions = json::array();
  for (auto p : c.gnb_positions)
    positions.push_back(vec_json(p));
  j = json{
      {"n_gnbs", c.n_gnbs},
      {"gnb_positions", positions},
      {"lte_anchor_position", vec_json(c.lte_anchor_position)},
      {"inter_site_distance_m", c.inter_site_distance_m},
      {"n_ues", c.n_ues},
      {"area_bounds",
       {{"x_min", c.area_bounds.x_min},
        {"y_min", c.area_bounds.y_min},
        {"x_max", c.area_bounds.x_max},
        {"y_max", c.area_bounds.y_max}}},
      {"carrier_freq_ghz", c.carrier_freq_ghz},
      {"lte_freq_ghz", c.lte_freq_ghz},
      {"bandwidth_hz", c.bandwidth_hz},
      {"lte_bandwidth_hz", c.lte_bandwidth_hz},
      {"gnb_tx_power_dbm", c.gnb_tx_power_dbm},
      {"lte_tx_power_dbm", c.lte_tx_power_dbm},
      {"gnb_height_m", c.gnb_height_m},
      {"ue_height_m", c.ue_height_m},
      {"noise_figure_db", c.noise_figure_db},
      {"control_period_ms", c.control_period_ms},
      {"episode_steps", c.episode_steps},
      {"traffic",
       {{"cbr_fraction", c.traffic.cbr_fraction},
        {"cbr_rates_mbps", c.traffic.cbr_rates_mbps},
        {"elastic_cap_mbps", c.traffic.elastic_cap_mbps}}},
      {"mobility",
       {{"min_speed_mps", c.mobility.min_speed_mps},
        {"max_speed_mps", c.mobility.max_speed_mps},
        {"epoch_s", c.mobility.epoch_s}}},
      {"energy",
       {{"p0_w", c.energy.p0_w},
        {"delta_p", c.energy.delta_p},
        {"p_max_tx_w", c.energy.p_max_tx_w},
        {"p_sleep_w", c.energy.p_sleep_w}}},
      {"reward",
       {{"w_throughput", c.reward.w_throughput},
        {"w_energy", c.reward.w_energy},
        {"c_activation", c.reward.c_activation},
        {"c_switch", c.reward.c_switch},
        {"tau_s", c.reward.tau_s},
        {"t_max_mbps", c.reward.t_max_mbps},
        {"p_max_w", c.reward.p_max_w}}},
      {"min_rsrp_dbm", c.min_rsrp_dbm},
      {"hysteresis_db", c.hysteresis_db},
      {"max_spectral_efficiency", c.max_spectral_efficiency},
      {"seed", c.seed},
  };
}

void
from_json(const json& j, ScenarioConfig& c)
{
  reject_unknown(j,
                 {"n_gnbs", "gnb_positions", "lte_anchor_position", "inter_site_distance_m", "n_ues", "area_bounds",
                  "carrier_freq_ghz", "lte_freq_ghz", "bandwidth_hz", "lte_bandwidth_hz", "gnb_tx_power_dbm",
                  "lte_tx_power_dbm", "gnb_height_m", "ue_height_m", "noise_figure_db", "control_period_ms",
                  "episode_steps", "traffic", "mobility", "energy", "reward", "min_rsrp_dbm", "hysteresis_db",
                  "max_spectral_efficiency", "seed"},
                 "");

  std::uint64_t seed = 42;
  read(j, "seed", seed);
  c = build_default_scenario(seed);

  if (auto it = j.find("gnb_positions"); it != j.end())
    {
      c.gnb_positions.clear();
      for (const auto& p : *it)
        c.gnb_positions.push_back(vec_from(p));
      c.n_gnbs = c.gnb_positions.size();
    }
  read(j, "n_gnbs", c.n_gnbs);
  if (auto it = j.find("lte_anchor_position"); it != j.end())
    c.lte_anchor_position = vec_from(*it);
  read(j, "inter_site_distance_m", c.inter_site_distance_m);
  read(j, "n_ues", c.n_ues);
  if (auto it = j.find("area_bounds"); it != j.end())
    {
      reject_unknown(*it, {"x_min", "y_min", "x_max", "y_max"}, "area_bounds");
      read(*it, "x_min", c.area_bounds.x_min);
      read(*it, "y_min", c.area_bounds.y_min);
      read(*it, "x_max", c.area_bounds.x_max);
      read(*it, "y_max", c.area_bounds.y_max);
    }
  read(j, "carrier_freq_ghz", c.carrier_freq_ghz);
  read(j, "lte_freq_ghz", c.lte_freq_ghz);
  read(j, "bandwidth_hz", c.bandwidth_hz);
  read(j, "lte_bandwidth_hz", c.lte_bandwidth_hz);
  read(j, "gnb_tx_power_dbm", c.gnb_tx_power_dbm);
  read(j, "lte_tx_power_dbm", c.lte_tx_power_dbm);
  read(j, "gnb_height_m", c.gnb_height_m);
  read(j, "ue_height_m", c.ue_height_m);
  read(j, "noise_figure_db", c.noise_figure_db);
  read(j, "control_period_ms", c.control_period_ms);
  read(j, "episode_steps", c.episode_steps);
  read(j, "min_rsrp_dbm", c.min_rsrp_dbm);
  read(j, "hysteresis_db", c.hysteresis_db);
  read(j, "max_spectral_efficiency", c.max_spectral_efficiency);

  if (auto it = j.find("traffic"); it != j.end())
    {
      reject_unknown(*it, {"cbr_fraction", "cbr_rates_mbps", "elastic_cap_mbps"}, "traffic");
      read(*it, "cbr_fraction", c.traffic.cbr_fraction);
      read(*it, "cbr_rates_mbps", c.traffic.cbr_rates_mbps);
      read(*it, "elastic_cap_mbps", c.traffic.elastic_cap_mbps);
    }
  if (auto it = j.find("mobility"); it != j.end())
    {
      reject_unknown(*it, {"min_speed_mps", "max_speed_mps", "epoch_s"}, "mobility");
      read(*it, "min_speed_mps", c.mobility.min_speed_mps);
      read(*it, "max_speed_mps", c.mobility.max_speed_mps);
      read(*it, "epoch_s", c.mobility.epoch_s);
    }
  if (auto it = j.find("energy"); it != j.end())
    {
      reject_unknown(*it, {"p0_w", "delta_p", "p_max_tx_w", "p_sleep_w"}, "energy");
      read(*it, "p0_w", c.energy.p0_w);
      read(*it, "delta_p", c.energy.delta_p);
      read(*it, "p_max_tx_w", c.energy.p_max_tx_w);
      read(*it, "p_sleep_w", c.energy.p_sleep_w);
    }

  // The power normalizer tracks the topology unless pinned explicitly.
  c.reward.p_max_w = max_network_power_w(c.n_gnbs, c.energy);
  if (auto it = j.find("reward"); it != j.end())
    {
      reject_unknown(*it, {"w_throughput", "w_energy", "c_activation", "c_switch", "tau_s", "t_max_mbps", "p_max_w"},
                     "reward");
      read(*it, "w_throughput", c.reward.w_throughput);
      read(*it, "w_energy", c.reward.w_energy);
      read(*it, "c_activation", c.reward.c_activation);
      read(*it, "c_switch", c.reward.c_switch);
      read(*it, "tau_s", c.reward.tau_s);
      read(*it, "t_max_mbps", c.reward.t_max_mbps);
      read(*it, "p_max_w", c.reward.p_max_w);
    }
}

ScenarioConfig
load_scenario(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in)
    throw IoError("cannot open scenario file " + path.string());
  try
    {
      return json::parse(in).get<ScenarioConfig>();
    }
  catch (const json::exception& e)
    {
      throw ConfigError({path.string() + ": " + e.what()});
    }
}

void
save_scenario(const ScenarioConfig& config, const std::filesystem::path& path)
{
  std::ofstream out(path);
  if (!out)
    throw IoError("cannot write scenario file " + path.string());
  out << json(config).dump(2) << '\n';
}

} // namespace ransim
