/* SPDX-License-Identifier: BSD-3-Clause */

#include "ransim/baselines.hpp"

#include "ransim/errors.hpp"
#include "ransim/kpm.hpp"
#include "ransim/server.hpp"
#include "ransim/wire.hpp"

#include <algorithm>
#include <cctype>

namespace ransim {

std::string_view
to_string(PolicyKind kind) noexcept
{
  switch (kind)
    {
    case PolicyKind::AllOn:
      return "ALL_ON";
    case PolicyKind::Random:
      return "RANDOM";
    case PolicyKind::Threshold:
      return "THRESHOLD";
    case PolicyKind::External:
      return "EXTERNAL";
    }
  return "?";
}

std::optional<PolicyKind>
parse_policy_kind(std::string_view text) noexcept
{
  std::string norm;
  for (char ch : text)
    norm.push_back(ch == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(ch))));
  for (auto k : {PolicyKind::AllOn, PolicyKind::Random, PolicyKind::Threshold, PolicyKind::External})
    if (to_string(k) == norm)
      return k;
  return std::nullopt;
}

ActionBits
threshold_policy(const Observation& obs, std::span<const Vec2> gnb_positions, double inter_site_distance_m,
                 const ThresholdParams& params, ThresholdHistory& history)
{
  const std::size_t n = gnb_positions.size();
  if (obs.size() != observation_size(n))
    throw std::invalid_argument("threshold_policy: observation length does not match the gNB count");
  history.last_change.resize(n);

  auto kpm = [&obs](std::size_t cell, std::size_t index) { return obs[cell * kCellKpmCount + index]; };
  auto utilization = [&](std::size_t c) { return kpm(c, kpm_index::kPrbUtilization); };
  auto may_change = [&](std::size_t c) {
    const auto& last = history.last_change[c];
    return !last || history.step - *last >= params.hold_steps;
  };
  constexpr double kTieTolerance = 1e-6; // meters

  ActionBits current = ActionBits::all_off(n);
  for (std::size_t c = 0; c < n; ++c)
    current.set(c, kpm(c, kpm_index::kIsActive) > 0.5);
  ActionBits next = current;

  // Wake the nearest sleeping cell next to every overloaded one.
  for (std::size_t c = 0; c < n; ++c)
    {
      if (!current[c] || utilization(c) <= params.theta_high)
        continue;
      std::optional<std::size_t> pick;
      double pick_distance = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        {
          if (next[j] || !may_change(j))
            continue;
          const double d = distance(gnb_positions[c], gnb_positions[j]);
          if (!pick || d < pick_distance - kTieTolerance)
            {
              pick = j;
              pick_distance = d;
            }
        }
      if (pick)
        next.set(*pick, true);
    }

  // Put lightly used cells to sleep when their absorbers have headroom.
  const double radius = params.neighbor_radius_factor * inter_site_distance_m;
  for (std::size_t c = 0; c < n; ++c)
    {
      if (!current[c] || !next[c] || !may_change(c) || kpm(c, kpm_index::kAttachedUes) >= params.u_low)
        continue;
      bool absorbers_ok = true;
      for (std::size_t j = 0; j < n && absorbers_ok; ++j)
        if (j != c && next[j] && distance(gnb_positions[c], gnb_positions[j]) <= radius)
          absorbers_ok = utilization(j) <= params.theta_high;
      if (absorbers_ok)
        next.set(c, false);
    }

  for (std::size_t c = 0; c < n; ++c)
    if (next[c] != current[c])
      history.last_change[c] = history.step;
  ++history.step;
  return next;
}

RandomController::RandomController(std::size_t n_gnbs, std::uint64_t seed, std::uint64_t hold_steps)
  : m_n(n_gnbs),
    m_hold(std::max<std::uint64_t>(hold_steps, 1)),
    m_rng(make_stream(seed, "controller")),
    m_current(ActionBits::all_on(n_gnbs))
{
}

ActionBits
RandomController::decide(const Observation&, const std::optional<EnvStep>&)
{
  if (m_step % m_hold == 0)
    {
      std::uniform_int_distribution<std::uint64_t> pick(0, (std::uint64_t{1} << m_n) - 1);
      m_current = decode_action(pick(m_rng), m_n);
    }
  ++m_step;
  return m_current;
}

ThresholdController::ThresholdController(const ScenarioConfig& config, ThresholdParams params)
  : m_positions(config.gnb_positions),
    m_isd(config.inter_site_distance_m),
    m_params(params)
{
  if (m_params.hold_steps < 1)
    throw ConfigError({"threshold: hold_steps must be ≥ 1"});
  if (!(m_params.theta_high > 0.0 && m_params.theta_high <= 1.0))
    throw ConfigError({"threshold: theta_high must lie in (0, 1]"});
}

ActionBits
ThresholdController::decide(const Observation& obs, const std::optional<EnvStep>&)
{
  return threshold_policy(obs, m_positions, m_isd, m_params, m_history);
}

struct ExternalController::Impl
{
  std::size_t n;
  LineClient client;
  std::int64_t id{0};

  Impl(std::size_t n_gnbs, const std::string& host, std::uint16_t port)
    : n(n_gnbs),
      client(host, port)
  {
  }
};

ExternalController::ExternalController(std::size_t n_gnbs, const std::string& host, std::uint16_t port)
  : m_impl(std::make_unique<Impl>(n_gnbs, host, port))
{
}

ExternalController::~ExternalController()
{
  try
    {
      m_impl->client.send_line(wire::dump({{"type", "BYE"}, {"id", ++m_impl->id}}));
    }
  catch (...)
    {
    }
}

ActionBits
ExternalController::decide(const Observation& obs, const std::optional<EnvStep>& last)
{
  const std::int64_t id = ++m_impl->id;
  const std::string reply = m_impl->client.request(
      last ? wire::encode_step_result(id, *last) : wire::encode_step_result(id, obs, 0.0, false, StepInfo{}));
  try
    {
      const auto msg = nlohmann::json::parse(reply);
      if (msg.at("type") != "STEP")
        throw IoError("agent replied with " + msg.at("type").dump() + " instead of STEP");
      std::vector<std::uint8_t> bits;
      for (const auto& b : msg.at("action"))
        bits.push_back(b.get<std::uint8_t>());
      if (bits.size() != m_impl->n)
        throw IoError("agent action has " + std::to_string(bits.size()) + " bits");
      return ActionBits(std::move(bits));
    }
  catch (const nlohmann::json::exception& e)
    {
      throw IoError(std::string("agent reply malformed: ") + e.what());
    }
  catch (const std::invalid_argument& e)
    {
      throw IoError(std::string("agent reply malformed: ") + e.what());
    }
}

std::unique_ptr<Controller>
make_controller(const ControllerSpec& spec, const ScenarioConfig& config, std::uint64_t seed)
{
  switch (spec.kind)
    {
    case PolicyKind::AllOn:
      return std::make_unique<AllOnController>(config.n_gnbs);
    case PolicyKind::Random:
      return std::make_unique<RandomController>(config.n_gnbs, seed, spec.threshold.hold_steps);
    case PolicyKind::Threshold:
      return std::make_unique<ThresholdController>(config, spec.threshold);
    case PolicyKind::External:
      return std::make_unique<ExternalController>(config.n_gnbs, spec.agent_host, spec.agent_port);
    }
  throw std::invalid_argument("unknown controller kind");
}

} // namespace ransim
