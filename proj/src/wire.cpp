/* SPDX-License-Identifier: BSD-3-Clause */

#include "ransim/wire.hpp"

#include <array>
#include <utility>

namespace ransim::wire {

using nlohmann::json;

namespace {

constexpr std::array<std::pair<MessageType, std::string_view>, 8> kTypeNames{{
    {MessageType::Hello, "HELLO"},
    {MessageType::Init, "INIT"},
    {MessageType::Reset, "RESET"},
    {MessageType::Step, "STEP"},
    {MessageType::StepResult, "STEP_RESULT"},
    {MessageType::KpmBatch, "KPM_BATCH"},
    {MessageType::Error, "ERROR"},
    {MessageType::Bye, "BYE"},
}};

} // namespace

std::string_view
to_string(MessageType type) noexcept
{
  for (auto [t, name] : kTypeNames)
    if (t == type)
      return name;
  return "?";
}

std::optional<MessageType>
parse_message_type(std::string_view text) noexcept
{
  for (auto [t, name] : kTypeNames)
    if (name == text)
      return t;
  return std::nullopt;
}

json
to_json(const StepInfo& info)
{
  return json{
      {"step", info.step},
      {"sim_time_ms", info.sim_time_ms},
      {"throughput_mbps", info.throughput_mbps},
      {"power_w", info.power_w},
      {"energy_j", info.energy_j},
      {"demand_mbps", info.demand_mbps},
      {"n_on", info.n_on},
      {"n_changed", info.n_changed},
      {"t_since_last_change_s", info.t_since_last_change_s},
      {"active_gnbs", info.active_gnbs},
  };
}

StepInfo
step_info_from_json(const json& j)
{
  StepInfo info;
  j.at("step").get_to(info.step);
  j.at("sim_time_ms").get_to(info.sim_time_ms);
  j.at("throughput_mbps").get_to(info.throughput_mbps);
  j.at("power_w").get_to(info.power_w);
  j.at("energy_j").get_to(info.energy_j);
  j.at("demand_mbps").get_to(info.demand_mbps);
  j.at("n_on").get_to(info.n_on);
  j.at("n_changed").get_to(info.n_changed);
  j.at("t_since_last_change_s").get_to(info.t_since_last_change_s);
  j.at("active_gnbs").get_to(info.active_gnbs);
  return info;
}

json
to_json(const KpmRecord& r)
{
  return json{
      {"imsi", r.imsi},
      {"timestamp_ms", r.timestamp_ms},
      {"serving_cell_id", r.serving_cell_id},
      {"dl_throughput_mbps", r.dl_throughput_mbps},
      {"sinr_db", r.sinr_db},
      {"rsrp_dbm", r.rsrp_dbm},
      {"demand_mbps", r.demand_mbps},
      {"backlog_mbits", r.backlog_mbits},
  };
}

KpmRecord
kpm_record_from_json(const json& j)
{
  KpmRecord r;
  j.at("imsi").get_to(r.imsi);
  j.at("timestamp_ms").get_to(r.timestamp_ms);
  j.at("serving_cell_id").get_to(r.serving_cell_id);
  j.at("dl_throughput_mbps").get_to(r.dl_throughput_mbps);
  j.at("sinr_db").get_to(r.sinr_db);
  j.at("rsrp_dbm").get_to(r.rsrp_dbm);
  j.at("demand_mbps").get_to(r.demand_mbps);
  j.at("backlog_mbits").get_to(r.backlog_mbits);
  return r;
}

std::string
dump(const json& j)
{
  // Strict UTF-8: anything else is a bug upstream, not client input.
  return j.dump(-1, ' ', false, json::error_handler_t::strict);
}

std::string
encode_step_result(std::int64_t id, const Observation& observation, double reward, bool terminated,
                   const StepInfo& info)
{
  return dump(json{
      {"type", to_string(MessageType::StepResult)},
      {"id", id},
      {"observation", observation},
      {"reward", reward},
      {"terminated", terminated},
      {"info", to_json(info)},
  });
}

std::string
encode_step_result(std::int64_t id, const EnvStep& step)
{
  return encode_step_result(id, step.observation, step.reward, step.terminated, step.info);
}

std::string
encode_error(std::optional<std::int64_t> id, std::string_view reason)
{
  json msg{{"type", to_string(MessageType::Error)}, {"id", nullptr}, {"reason", reason}};
  if (id)
    msg["id"] = *id;
  return dump(msg);
}

} // namespace ransim::wire
