/* SPDX-License-Identifier: BSD-3-Clause */

#ifndef RANSIM_ENGINE_HPP
#define RANSIM_ENGINE_HPP

#include "ransim/action.hpp"
#include "ransim/channel.hpp"
#include "ransim/kpm.hpp"
#include "ransim/mobility.hpp"
#include "ransim/rng.hpp"
#include "ransim/scenario.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace ransim {

enum class CellKind
{
  Gnb,
  LteAnchor,
};

struct CellState
{
  std::size_t cell_id{0};
  CellKind kind{CellKind::Gnb};
  Vec2 position{};
  bool active{true};
  std::vector<Imsi> attached_ues; // ascending
  double load{0.0};
  double power_w{0.0};
  double energy_j{0.0}; // last period
  double served_mbps{0.0};
  std::uint32_t ho_in{0};
  std::uint32_t ho_out{0};
};

struct SimClock
{
  std::uint64_t step_index{0};
  std::int64_t sim_time_ms{0};
};

struct TickOutput
{
  std::vector<KpmRecord> ue_rows;
  std::vector<CellKpmRow> cell_rows;
};

/// Served rates live on this grid (Mbps) so that sums are exact in any order.
inline constexpr double kRateQuantumMbps = 1.0 / 1048576.0;

double quantize_rate_mbps(double mbps) noexcept;

/// Horizontal distances below this are clamped before path loss evaluation.
inline constexpr double kMinLinkDistanceM = 1.0;

/**
 * Deterministic discrete-time RAN simulation.
 *
 * Constructing a Simulation is the episode reset: every gNB is switched on,
 * UEs are placed (uniformly, or at the given positions), LOS state and
 * shadowing are drawn once per link, and UEs attach to the strongest
 * qualifying gNB or fall back to the LTE anchor.
 *
 * A tick advances one control period in the fixed order mobility, channel,
 * handover, service, energy, KPM emission, clock. Randomness comes from
 * independent named streams of config.seed ("placement", "traffic",
 * "mobility", "channel"); mobility never depends on the actions taken.
 *
 * Instances are plain values: copying one forks the simulation.
 */
class Simulation
{
public:
  /// \throws ConfigError if validate(config) is non-empty
  explicit Simulation(ScenarioConfig config);
  /// Reset with explicit initial UE positions (one per UE, IMSI order).
  Simulation(ScenarioConfig config, std::span<const Vec2> ue_positions);

  /**
   * Set each gNB's RF frontend to the requested state. UEs of a gNB that
   * goes dark are handed over at once (strongest qualifying gNB, else the
   * anchor) and counted in ho_out/ho_in.
   *
   * \throws std::invalid_argument if action.size() != n_gnbs
   */
  void apply_action(const ActionBits& action);

  TickOutput tick();

  const ScenarioConfig& config() const noexcept { return m_config; }
  const SimClock& clock() const noexcept { return m_clock; }
  std::span<const CellState> cells() const noexcept { return m_cells; }
  std::span<const UeState> ues() const noexcept { return m_ues; }
  const LinkState& link(std::size_t ue_index, std::size_t cell_id) const;
  /// gNB activity as an action vector.
  ActionBits active_gnbs() const;

  /// Cell rows describing the current state (reset or last tick).
  std::span<const CellKpmRow> latest_cell_rows() const noexcept { return m_latestRows; }

  double total_power_w() const noexcept { return m_totalPowerW; }
  double total_served_mbps() const noexcept { return m_totalServedMbps; }
  double total_demand_mbps() const noexcept { return m_totalDemandMbps; }

private:
  void initialize(std::optional<std::span<const Vec2>> ue_positions);
  void refresh_links();
  std::optional<std::size_t> best_gnb(std::size_t ue_index) const;
  void hand_over(std::size_t ue_index, std::size_t target);
  void reevaluate_attachment();
  void rebuild_attachment_lists();
  void evaluate_service(bool commit);
  std::vector<CellKpmRow> build_cell_rows(std::int64_t timestamp_ms) const;
  std::vector<KpmRecord> build_ue_rows(std::int64_t timestamp_ms) const;

  std::span<const LinkState> ue_links(std::size_t ue_index) const;

  ScenarioConfig m_config;
  SimClock m_clock;
  std::vector<CellState> m_cells;
  std::vector<UeState> m_ues;
  std::vector<LinkState> m_links; // ue-major, n_cells per UE
  RandomEngine m_mobilityRng;
  std::vector<CellKpmRow> m_latestRows;
  double m_totalPowerW{0.0};
  double m_totalServedMbps{0.0};
  double m_totalDemandMbps{0.0};
};

} // namespace ransim

#endif
