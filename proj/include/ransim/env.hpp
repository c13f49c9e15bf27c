/* SPDX-License-Identifier: BSD-3-Clause */

#ifndef RANSIM_ENV_HPP
#define RANSIM_ENV_HPP

#include "ransim/action.hpp"
#include "ransim/datalake.hpp"
#include "ransim/engine.hpp"
#include "ransim/scenario.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace ransim {

/**
 * 12 KPMs per gNB in cell-id order, then total offered demand (Mbps).
 * Length 12·N + 1. The LTE anchor has no block: it is not controllable.
 */
using Observation = std::vector<double>;

constexpr std::size_t
observation_size(std::size_t n_gnbs) noexcept
{
  return kCellKpmCount * n_gnbs + 1;
}

/// Raw per-step quantities the reward is built from.
struct StepInfo
{
  std::uint64_t step{0};
  std::int64_t sim_time_ms{0};
  double throughput_mbps{0.0}; // T: total served DL throughput
  double power_w{0.0};         // P: total power, anchor included
  double energy_j{0.0};        // P · period
  double demand_mbps{0.0};
  std::uint64_t n_on{0};
  std::uint64_t n_changed{0};
  double t_since_last_change_s{0.0};
  std::uint64_t active_gnbs{0};

  friend bool operator==(const StepInfo&, const StepInfo&) = default;
};

struct EnvStep
{
  Observation observation;
  double reward{0.0};
  bool terminated{false};
  StepInfo info;
};

Observation get_obs(const Simulation& sim);

/// exp(−Δt/τ)
double decay_factor(double t_since_last_change_s, double tau_s) noexcept;

/// c_activation·n_on + c_switch·n_changed·exp(−Δt/τ)
double switching_penalty(const RewardWeights& w, std::uint64_t n_on, std::uint64_t n_changed,
                         double t_since_last_change_s) noexcept;

/**
 * w_T·T/T_max − w_E·P/P_max − switching_penalty(...)
 *
 * Recomputing this from a StepInfo reproduces the reward of that step.
 */
double reward_from_totals(const RewardWeights& w, double throughput_mbps, double power_w, std::uint64_t n_on,
                          std::uint64_t n_changed, double t_since_last_change_s) noexcept;

double compute_reward(const Simulation& sim, const ActionBits& prev_action, const ActionBits& action,
                      double t_since_last_change_s);

/**
 * Gym-style energy-saving environment over one Simulation.
 *
 * step() applies the action, ticks once, fills the datalake with the tick's
 * UE rows and keeps the cell rows in a side history. An episode ends after
 * config.episode_steps steps; stepping further requires reset().
 */
class EnergySavingEnv
{
public:
  explicit EnergySavingEnv(ScenarioConfig config);

  /// Start a new episode; `seed` overrides config.seed when given.
  Observation reset(std::optional<std::uint64_t> seed = std::nullopt);

  /// \throws LifecycleError before reset() or after termination
  /// \throws std::invalid_argument on a wrong action length
  EnvStep step(const ActionBits& action);

  bool is_reset() const noexcept { return m_sim.has_value(); }
  bool terminated() const noexcept;
  std::size_t n_gnbs() const noexcept { return m_config.n_gnbs; }
  std::size_t observation_length() const noexcept { return observation_size(m_config.n_gnbs); }
  std::uint64_t action_count() const noexcept { return std::uint64_t{1} << m_config.n_gnbs; }
  const ScenarioConfig& config() const noexcept { return m_config; }

  /// Totals of the freshly reset network (step 0, no action taken yet).
  /// \throws LifecycleError before reset()
  StepInfo reset_info() const;

  /// \throws LifecycleError before reset()
  const Simulation& simulation() const;
  const Datalake& datalake() const noexcept { return m_datalake; }
  /// One entry per completed step, each holding n_gnbs + 1 rows.
  const std::vector<std::vector<CellKpmRow>>& cell_history() const noexcept { return m_cellHistory; }
  const std::vector<KpmRecord>& last_ue_rows() const noexcept { return m_lastUeRows; }
  const ActionBits& last_action() const noexcept { return m_lastAction; }

private:
  ScenarioConfig m_config;
  std::optional<Simulation> m_sim;
  Datalake m_datalake;
  std::vector<std::vector<CellKpmRow>> m_cellHistory;
  std::vector<KpmRecord> m_lastUeRows;
  ActionBits m_lastAction;
  std::optional<std::uint64_t> m_lastChangeStep;
};

} // namespace ransim

#endif
