/* SPDX-License-Identifier: BSD-3-Clause */

#include "ransim/env.hpp"

#include "ransim/energy.hpp"
#include "ransim/errors.hpp"

#include <cmath>

namespace ransim {

Observation
get_obs(const Simulation& sim)
{
  const std::size_t n_gnbs = sim.config().n_gnbs;
  Observation obs;
  obs.reserve(observation_size(n_gnbs));
  const auto rows = sim.latest_cell_rows();
  for (std::size_t c = 0; c < n_gnbs; ++c)
    for (double v : rows[c].kpms())
      obs.push_back(v);
  obs.push_back(sim.total_demand_mbps());
  return obs;
}

double
decay_factor(double t_since_last_change_s, double tau_s) noexcept
{
  return std::exp(-t_since_last_change_s / tau_s);
}

double
switching_penalty(const RewardWeights& w, std::uint64_t n_on, std::uint64_t n_changed,
                  double t_since_last_change_s) noexcept
{
  return w.c_activation * static_cast<double>(n_on)
         + w.c_switch * static_cast<double>(n_changed) * decay_factor(t_since_last_change_s, w.tau_s);
}

double
reward_from_totals(const RewardWeights& w, double throughput_mbps, double power_w, std::uint64_t n_on,
                   std::uint64_t n_changed, double t_since_last_change_s) noexcept
{
  return w.w_throughput * (throughput_mbps / w.t_max_mbps) - w.w_energy * (power_w / w.p_max_w)
         - switching_penalty(w, n_on, n_changed, t_since_last_change_s);
}

double
compute_reward(const Simulation& sim, const ActionBits& prev_action, const ActionBits& action,
               double t_since_last_change_s)
{
  return reward_from_totals(sim.config().reward, sim.total_served_mbps(), sim.total_power_w(),
                            count_activations(prev_action, action), hamming_distance(prev_action, action),
                            t_since_last_change_s);
}

EnergySavingEnv::EnergySavingEnv(ScenarioConfig config)
  : m_config(std::move(config))
{
  if (auto violations = validate(m_config); !violations.empty())
    throw ConfigError(std::move(violations));
}

Observation
EnergySavingEnv::reset(std::optional<std::uint64_t> seed)
{
  if (seed)
    m_config.seed = *seed;
  m_sim.emplace(m_config);
  m_datalake.clear();
  m_cellHistory.clear();
  m_lastUeRows.clear();
  m_lastAction = ActionBits::all_on(m_config.n_gnbs);
  m_lastChangeStep.reset();
  return get_obs(*m_sim);
}

bool
EnergySavingEnv::terminated() const noexcept
{
  return m_sim && m_sim->clock().step_index >= m_config.episode_steps;
}

const Simulation&
EnergySavingEnv::simulation() const
{
  if (!m_sim)
    throw LifecycleError("lifecycle: reset required");
  return *m_sim;
}

StepInfo
EnergySavingEnv::reset_info() const
{
  const Simulation& sim = simulation();
  StepInfo info;
  info.step = sim.clock().step_index;
  info.sim_time_ms = sim.clock().sim_time_ms;
  info.throughput_mbps = sim.total_served_mbps();
  info.power_w = sim.total_power_w();
  info.demand_mbps = sim.total_demand_mbps();
  info.active_gnbs = sim.active_gnbs().count_on();
  return info;
}

EnvStep
EnergySavingEnv::step(const ActionBits& action)
{
  if (!m_sim)
    throw LifecycleError("lifecycle: reset required");
  if (terminated())
    throw LifecycleError("lifecycle: episode terminated, reset required");
  if (action.size() != m_config.n_gnbs)
    throw std::invalid_argument("action has " + std::to_string(action.size()) + " bits, expected "
                                + std::to_string(m_config.n_gnbs));

  m_sim->apply_action(action);
  TickOutput out = m_sim->tick();
  m_datalake.insert_ue_rows(out.ue_rows);
  m_cellHistory.push_back(std::move(out.cell_rows));
  m_lastUeRows = std::move(out.ue_rows);

  const std::uint64_t step = m_sim->clock().step_index;
  const std::uint64_t n_changed = hamming_distance(m_lastAction, action);

  // Time since the previous change; the first change of an episode counts
  // as immediate (decay factor 1).
  double since = 0.0;
  if (m_lastChangeStep)
    since = static_cast<double>(step - *m_lastChangeStep) * m_config.control_period_ms / 1000.0;

  EnvStep result;
  result.info.step = step;
  result.info.sim_time_ms = m_sim->clock().sim_time_ms;
  result.info.throughput_mbps = m_sim->total_served_mbps();
  result.info.power_w = m_sim->total_power_w();
  result.info.energy_j = period_energy_j(result.info.power_w, m_config.control_period_s());
  result.info.demand_mbps = m_sim->total_demand_mbps();
  result.info.n_on = count_activations(m_lastAction, action);
  result.info.n_changed = n_changed;
  result.info.t_since_last_change_s = since;
  result.info.active_gnbs = action.count_on();

  result.reward = reward_from_totals(m_config.reward, result.info.throughput_mbps, result.info.power_w,
                                     result.info.n_on, n_changed, since);
  result.observation = get_obs(*m_sim);
  result.terminated = terminated();

  if (n_changed > 0)
    m_lastChangeStep = step;
  m_lastAction = action;
  return result;
}

} // namespace ransim
