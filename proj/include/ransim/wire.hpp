/* SPDX-License-Identifier: BSD-3-Clause */

#ifndef RANSIM_WIRE_HPP
#define RANSIM_WIRE_HPP

#include "ransim/env.hpp"
#include "ransim/kpm.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include <json.hpp>

// Newline-delimited JSON messages exchanged with external agents. The
// message set and field names are documented in protocol.md.
namespace ransim::wire {

inline constexpr std::string_view kProtocolVersion = "1";

enum class MessageType
{
  Hello,
  Init,
  Reset,
  Step,
  StepResult,
  KpmBatch,
  Error,
  Bye,
};

std::string_view to_string(MessageType type) noexcept;
std::optional<MessageType> parse_message_type(std::string_view text) noexcept;

nlohmann::json to_json(const StepInfo& info);
StepInfo step_info_from_json(const nlohmann::json& j);
nlohmann::json to_json(const KpmRecord& record);
KpmRecord kpm_record_from_json(const nlohmann::json& j);

/// Compact single-line serialization; doubles use the shortest decimal
/// that parses back to the same value.
std::string dump(const nlohmann::json& j);

std::string encode_step_result(std::int64_t id, const Observation& observation, double reward, bool terminated,
                               const StepInfo& info);
std::string encode_step_result(std::int64_t id, const EnvStep& step);
std::string encode_error(std::optional<std::int64_t> id, std::string_view reason);

} // namespace ransim::wire

#endif
