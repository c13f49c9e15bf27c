/* SPDX-License-Identifier: BSD-3-Clause */

#include "ransim/engine.hpp"

#include "ransim/energy.hpp"
#include "ransim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ransim {

double
quantize_rate_mbps(double mbps) noexcept
{
  return std::floor(mbps / kRateQuantumMbps) * kRateQuantumMbps;
}

Simulation::Simulation(ScenarioConfig config)
  : m_config(std::move(config)),
    m_mobilityRng(make_stream(m_config.seed, "mobility"))
{
  initialize(std::nullopt);
}

Simulation::Simulation(ScenarioConfig config, std::span<const Vec2> ue_positions)
  : m_config(std::move(config)),
    m_mobilityRng(make_stream(m_config.seed, "mobility"))
{
  initialize(ue_positions);
}

void
Simulation::initialize(std::optional<std::span<const Vec2>> ue_positions)
{
  if (auto violations = validate(m_config); !violations.empty())
    throw ConfigError(std::move(violations));
  if (ue_positions && ue_positions->size() != m_config.n_ues)
    throw std::invalid_argument("Simulation: expected one initial position per UE");

  const std::size_t n_gnbs = m_config.n_gnbs;
  m_cells.clear();
  m_cells.resize(n_gnbs + 1);
  for (std::size_t i = 0; i <= n_gnbs; ++i)
    {
      m_cells[i].cell_id = i;
      m_cells[i].kind = i < n_gnbs ? CellKind::Gnb : CellKind::LteAnchor;
      m_cells[i].position = i < n_gnbs ? m_config.gnb_positions[i] : m_config.lte_anchor_position;
    }

  auto placement = make_stream(m_config.seed, "placement");
  auto traffic = make_stream(m_config.seed, "traffic");
  const auto& b = m_config.area_bounds;
  std::uniform_real_distribution<double> ux(b.x_min, b.x_max);
  std::uniform_real_distribution<double> uy(b.y_min, b.y_max);
  const auto& rates = m_config.traffic.cbr_rates_mbps;
  const auto n_cbr = static_cast<std::size_t>(
      std::ceil(m_config.traffic.cbr_fraction * static_cast<double>(m_config.n_ues) - 1e-9));

  m_ues.assign(m_config.n_ues, UeState{});
  for (std::size_t u = 0; u < m_config.n_ues; ++u)
    {
      UeState& ue = m_ues[u];
      ue.imsi = u + 1;
      if (ue_positions)
        ue.position = (*ue_positions)[u];
      else
        {
          const double x = ux(placement);
          ue.position = {x, uy(placement)};
        }
      redraw_walk(ue, m_mobilityRng, m_config.mobility);
      if (u < n_cbr)
        {
          ue.traffic_class = TrafficClass::Cbr;
          std::uniform_int_distribution<std::size_t> pick(0, rates.size() - 1);
          ue.cbr_rate_mbps = rates[pick(traffic)];
        }
      else
        ue.traffic_class = TrafficClass::Elastic;
    }

  // LOS state and shadowing are frozen per link for the whole episode.
  auto channel = make_stream(m_config.seed, "channel");
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t n_cells = m_config.n_cells();
  m_links.assign(m_config.n_ues * n_cells, LinkState{});
  for (std::size_t u = 0; u < m_config.n_ues; ++u)
    for (std::size_t c = 0; c < n_cells; ++c)
      {
        LinkState& l = m_links[u * n_cells + c];
        l.ue_index = u;
        l.cell_id = c;
        const double d2d = std::max(distance(m_ues[u].position, m_cells[c].position), kMinLinkDistanceM);
        l.is_los = unit(channel) < los_probability(d2d);
        l.shadowing_db = gauss(channel) * (l.is_los ? kShadowingSigmaLosDb : kShadowingSigmaNlosDb);
      }
  refresh_links();

  for (std::size_t u = 0; u < m_ues.size(); ++u)
    m_ues[u].serving_cell = best_gnb(u).value_or(m_config.anchor_id());
  rebuild_attachment_lists();

  m_clock = SimClock{};
  evaluate_service(false);
  m_latestRows = build_cell_rows(0);
}

const LinkState&
Simulation::link(std::size_t ue_index, std::size_t cell_id) const
{
  if (ue_index >= m_ues.size() || cell_id >= m_cells.size())
    throw std::out_of_range("Simulation::link");
  return m_links[ue_index * m_cells.size() + cell_id];
}

std::span<const LinkState>
Simulation::ue_links(std::size_t ue_index) const
{
  return std::span<const LinkState>(m_links).subspan(ue_index * m_cells.size(), m_cells.size());
}

ActionBits
Simulation::active_gnbs() const
{
  std::vector<std::uint8_t> bits(m_config.n_gnbs);
  for (std::size_t i = 0; i < m_config.n_gnbs; ++i)
    bits[i] = m_cells[i].active ? 1 : 0;
  return ActionBits(std::move(bits));
}

void
Simulation::refresh_links()
{
  const std::size_t n_cells = m_cells.size();
  for (std::size_t u = 0; u < m_ues.size(); ++u)
    for (std::size_t c = 0; c < n_cells; ++c)
      {
        LinkState& l = m_links[u * n_cells + c];
        const bool anchor = m_cells[c].kind == CellKind::LteAnchor;
        const double d2d = std::max(distance(m_ues[u].position, m_cells[c].position), kMinLinkDistanceM);
        l.path_loss_db = path_loss_umi_db(d2d, anchor ? m_config.lte_freq_ghz : m_config.carrier_freq_ghz,
                                          m_config.gnb_height_m, m_config.ue_height_m, l.is_los);
        const double tx = anchor ? m_config.lte_tx_power_dbm : m_config.gnb_tx_power_dbm;
        l.rsrp_dbm = tx - l.path_loss_db - l.shadowing_db;
      }
}

std::optional<std::size_t>
Simulation::best_gnb(std::size_t ue_index) const
{
  std::optional<std::size_t> best;
  double best_rsrp = 0.0;
  const auto links = ue_links(ue_index);
  for (std::size_t c = 0; c < m_config.n_gnbs; ++c)
    {
      if (!m_cells[c].active || links[c].rsrp_dbm < m_config.min_rsrp_dbm)
        continue;
      if (!best || links[c].rsrp_dbm > best_rsrp)
        {
          best = c;
          best_rsrp = links[c].rsrp_dbm;
        }
    }
  return best;
}

void
Simulation::hand_over(std::size_t ue_index, std::size_t target)
{
  UeState& ue = m_ues[ue_index];
  if (ue.serving_cell == target)
    return;
  ++m_cells[ue.serving_cell].ho_out;
  ++m_cells[target].ho_in;
  ue.serving_cell = target;
}

void
Simulation::rebuild_attachment_lists()
{
  for (auto& cell : m_cells)
    cell.attached_ues.clear();
  for (const auto& ue : m_ues)
    m_cells[ue.serving_cell].attached_ues.push_back(ue.imsi);
}

void
Simulation::apply_action(const ActionBits& action)
{
  if (action.size() != m_config.n_gnbs)
    throw std::invalid_argument("apply_action: expected " + std::to_string(m_config.n_gnbs) + " bits, got "
                                + std::to_string(action.size()));

  for (std::size_t i = 0; i < m_config.n_gnbs; ++i)
    m_cells[i].active = action[i];

  for (std::size_t u = 0; u < m_ues.size(); ++u)
    {
      const std::size_t serving = m_ues[u].serving_cell;
      if (!m_cells[serving].active)
        hand_over(u, best_gnb(u).value_or(m_config.anchor_id()));
    }
  rebuild_attachment_lists();
}

void
Simulation::reevaluate_attachment()
{
  const std::size_t anchor = m_config.anchor_id();
  for (std::size_t u = 0; u < m_ues.size(); ++u)
    {
      const std::size_t serving = m_ues[u].serving_cell;
      const auto links = ue_links(u);
      const auto best = best_gnb(u);

      if (serving == anchor)
        {
          if (best && links[*best].rsrp_dbm >= m_config.min_rsrp_dbm + m_config.hysteresis_db)
            hand_over(u, *best);
          continue;
        }
      const bool serving_ok = m_cells[serving].active && links[serving].rsrp_dbm >= m_config.min_rsrp_dbm;
      if (!serving_ok)
        hand_over(u, best.value_or(anchor));
      else if (best && *best != serving
               && links[*best].rsrp_dbm > links[serving].rsrp_dbm + m_config.hysteresis_db)
        hand_over(u, *best);
    }
  rebuild_attachment_lists();
}

void
Simulation::evaluate_service(bool commit)
{
  const double dt = m_config.control_period_s();
  const std::size_t n_gnbs = m_config.n_gnbs;
  const std::size_t anchor = m_config.anchor_id();

  const ActionBits gnb_active = active_gnbs();
  static constexpr std::uint8_t kAnchorActive[1] = {1};

  std::vector<double> used_hz(m_cells.size(), 0.0);
  for (auto& cell : m_cells)
    cell.served_mbps = 0.0;

  m_totalServedMbps = 0.0;
  m_totalDemandMbps = 0.0;
  for (std::size_t u = 0; u < m_ues.size(); ++u)
    {
      UeState& ue = m_ues[u];
      CellState& cell = m_cells[ue.serving_cell];
      const auto links = ue_links(u);
      ue.demand_mbps = traffic_demand(ue, m_config.traffic, dt);

      double bandwidth = m_config.bandwidth_hz;
      if (ue.serving_cell == anchor)
        {
          bandwidth = m_config.lte_bandwidth_hz;
          ue.sinr_db = sinr_db(0, links.subspan(anchor, 1), kAnchorActive, bandwidth, m_config.noise_figure_db);
        }
      else
        ue.sinr_db =
            sinr_db(ue.serving_cell, links.first(n_gnbs), gnb_active.bits(), bandwidth, m_config.noise_figure_db);
      ue.rsrp_dbm = links[ue.serving_cell].rsrp_dbm;

      const double share = bandwidth / static_cast<double>(cell.attached_ues.size());
      const double se = spectral_efficiency(ue.sinr_db, m_config.max_spectral_efficiency);
      ue.served_mbps =
          quantize_rate_mbps(ue_throughput_mbps(ue.sinr_db, share, m_config.max_spectral_efficiency, ue.demand_mbps));
      if (ue.served_mbps > 0.0 && se > 0.0)
        used_hz[ue.serving_cell] += std::min(share, ue.served_mbps * 1e6 / se);

      cell.served_mbps += ue.served_mbps;
      m_totalServedMbps += ue.served_mbps;
      m_totalDemandMbps += ue.demand_mbps;

      if (commit)
        ue.backlog_mbits = backlog_after_service(ue, ue.served_mbps, dt);
    }

  m_totalPowerW = 0.0;
  for (auto& cell : m_cells)
    {
      const double bandwidth = cell.kind == CellKind::LteAnchor ? m_config.lte_bandwidth_hz : m_config.bandwidth_hz;
      cell.load = cell.active ? std::clamp(used_hz[cell.cell_id] / bandwidth, 0.0, 1.0) : 0.0;
      cell.power_w = cell_power_w(cell.active, cell.load, m_config.energy);
      cell.energy_j = commit ? period_energy_j(cell.power_w, dt) : 0.0;
      m_totalPowerW += cell.power_w;
    }
}

std::vector<CellKpmRow>
Simulation::build_cell_rows(std::int64_t timestamp_ms) const
{
  std::vector<CellKpmRow> rows;
  rows.reserve(m_cells.size());
  for (const auto& cell : m_cells)
    {
      CellKpmRow row;
      row.cell_id = cell.cell_id;
      row.timestamp_ms = timestamp_ms;
      row.dl_throughput_mbps = cell.served_mbps;
      row.num_attached_ues = static_cast<double>(cell.attached_ues.size());
      row.prb_utilization = cell.load;
      row.power_w = cell.power_w;
      row.energy_j_last_period = cell.energy_j;
      row.is_active = cell.active ? 1.0 : 0.0;
      row.ho_in = cell.ho_in;
      row.ho_out = cell.ho_out;
      if (!cell.attached_ues.empty())
        {
          double sinr = 0.0, rsrp = 0.0, backlog = 0.0, violations = 0.0;
          for (Imsi imsi : cell.attached_ues)
            {
              const UeState& ue = m_ues[imsi - 1];
              sinr += ue.sinr_db;
              rsrp += ue.rsrp_dbm;
              backlog += ue.backlog_mbits;
              if (ue.served_mbps < ue.demand_mbps - kRateQuantumMbps)
                violations += 1.0;
            }
          const double n = row.num_attached_ues;
          row.avg_sinr_db = sinr / n;
          row.avg_rsrp_dbm = rsrp / n;
          row.avg_backlog_mbits = backlog / n;
          row.qos_violation_ratio = violations / n;
        }
      rows.push_back(row);
    }
  return rows;
}

std::vector<KpmRecord>
Simulation::build_ue_rows(std::int64_t timestamp_ms) const
{
  std::vector<KpmRecord> rows;
  rows.reserve(m_ues.size());
  for (const auto& ue : m_ues)
    rows.push_back(KpmRecord{
        .imsi = ue.imsi,
        .timestamp_ms = timestamp_ms,
        .serving_cell_id = ue.serving_cell,
        .dl_throughput_mbps = ue.served_mbps,
        .sinr_db = ue.sinr_db,
        .rsrp_dbm = ue.rsrp_dbm,
        .demand_mbps = ue.demand_mbps,
        .backlog_mbits = ue.backlog_mbits,
    });
  return rows;
}

TickOutput
Simulation::tick()
{
  const double dt = m_config.control_period_s();
  for (auto& ue : m_ues)
    ue = step_mobility(ue, dt, m_config.area_bounds, m_mobilityRng, m_config.mobility);
  refresh_links();
  reevaluate_attachment();
  evaluate_service(true);

  TickOutput out;
  out.cell_rows = build_cell_rows(m_clock.sim_time_ms);
  out.ue_rows = build_ue_rows(m_clock.sim_time_ms);
  m_latestRows = out.cell_rows;

  for (auto& cell : m_cells)
    cell.ho_in = cell.ho_out = 0;
  ++m_clock.step_index;
  m_clock.sim_time_ms =
      static_cast<std::int64_t>(std::llround(static_cast<double>(m_clock.step_index) * m_config.control_period_ms));
  return out;
}

} // namespace ransim
