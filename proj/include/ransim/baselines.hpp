/* SPDX-License-Identifier: BSD-3-Clause */

#ifndef RANSIM_BASELINES_HPP
#define RANSIM_BASELINES_HPP

#include "ransim/action.hpp"
#include "ransim/env.hpp"
#include "ransim/rng.hpp"
#include "ransim/scenario.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ransim {

enum class PolicyKind
{
  AllOn,
  Random,
  Threshold,
  External,
};

std::string_view to_string(PolicyKind kind) noexcept;
/// Accepts ALL_ON / RANDOM / THRESHOLD / EXTERNAL, case-insensitive, '-' or '_'.
std::optional<PolicyKind> parse_policy_kind(std::string_view text) noexcept;

struct ThresholdParams
{
  double u_low{2.0};      // switch off below this many attached UEs
  double theta_high{0.8}; // PRB utilization that counts as overload
  std::uint64_t hold_steps{10};
  double neighbor_radius_factor{1.5}; // × inter-site distance
};

struct ControllerSpec
{
  PolicyKind kind{PolicyKind::AllOn};
  ThresholdParams threshold{};
  std::string agent_host{"127.0.0.1"};
  std::uint16_t agent_port{0};
};

/// Per-cell switching memory for hold_steps.
struct ThresholdHistory
{
  std::uint64_t step{0};
  std::vector<std::optional<std::uint64_t>> last_change; // per gNB
};

/**
 * Rule-based cell sleeping.
 *
 * Wake-up: for each active gNB above theta_high (id order) the nearest
 * sleeping gNB is switched on, lowest id among equidistant ones.
 * Sleep: an active gNB with fewer than u_low UEs is switched off when every
 * active neighbor that would absorb its UEs sits at or below theta_high. With
 * no active neighbor the LTE anchor absorbs. Each gNB waits hold_steps
 * between its own changes.
 *
 * `history` is updated with the changes made and its step advanced.
 */
ActionBits threshold_policy(const Observation& obs, std::span<const Vec2> gnb_positions,
                            double inter_site_distance_m, const ThresholdParams& params, ThresholdHistory& history);

/// One decision per control period from the latest observation.
class Controller
{
public:
  virtual ~Controller() = default;
  virtual ActionBits decide(const Observation& obs, const std::optional<EnvStep>& last) = 0;
};

class AllOnController final : public Controller
{
public:
  explicit AllOnController(std::size_t n_gnbs) : m_n(n_gnbs) {}
  ActionBits decide(const Observation&, const std::optional<EnvStep>&) override { return ActionBits::all_on(m_n); }

private:
  std::size_t m_n;
};

/// Uniform action index, re-drawn every hold_steps steps.
class RandomController final : public Controller
{
public:
  RandomController(std::size_t n_gnbs, std::uint64_t seed, std::uint64_t hold_steps);
  ActionBits decide(const Observation&, const std::optional<EnvStep>&) override;

private:
  std::size_t m_n;
  std::uint64_t m_hold;
  std::uint64_t m_step{0};
  RandomEngine m_rng;
  ActionBits m_current;
};

class ThresholdController final : public Controller
{
public:
  ThresholdController(const ScenarioConfig& config, ThresholdParams params);
  ActionBits decide(const Observation& obs, const std::optional<EnvStep>&) override;

private:
  std::vector<Vec2> m_positions;
  double m_isd;
  ThresholdParams m_params;
  ThresholdHistory m_history;
};

/**
 * Delegates decisions to an agent over TCP. Each period the agent receives
 * a STEP_RESULT line (id = step) and must answer with a STEP line carrying
 * the action bits.
 */
class ExternalController final : public Controller
{
public:
  ExternalController(std::size_t n_gnbs, const std::string& host, std::uint16_t port);
  ~ExternalController() override;
  ActionBits decide(const Observation& obs, const std::optional<EnvStep>& last) override;

private:
  struct Impl;
  std::unique_ptr<Impl> m_impl;
};

std::unique_ptr<Controller> make_controller(const ControllerSpec& spec, const ScenarioConfig& config,
                                            std::uint64_t seed);

} // namespace ransim

#endif
