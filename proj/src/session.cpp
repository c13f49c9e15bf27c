/* SPDX-License-Identifier: BSD-3-Clause */

#include "ransim/session.hpp"

#include "ransim/errors.hpp"
#include "ransim/wire.hpp"

namespace ransim {

using nlohmann::json;
using wire::MessageType;

std::string
Session::order_violation(std::int64_t id, std::string_view what)
{
  if (m_state == State::Running)
    m_state = State::Ready;
  return wire::encode_error(id, "protocol: " + std::string(what));
}

std::string
Session::handle(std::string_view line)
{
  if (m_state == State::Closed)
    return wire::encode_error(std::nullopt, "protocol: session closed");

  json msg;
  try
    {
      msg = json::parse(line);
    }
  catch (const json::parse_error& e)
    {
      return wire::encode_error(std::nullopt, std::string("malformed: ") + e.what());
    }
  if (!msg.is_object())
    return wire::encode_error(std::nullopt, "malformed: message must be a JSON object");

  const auto id_it = msg.find("id");
  if (id_it == msg.end() || !id_it->is_number_integer())
    return wire::encode_error(std::nullopt, "malformed: integer 'id' required");
  const auto id = id_it->get<std::int64_t>();
  const auto type_it = msg.find("type");
  if (type_it == msg.end() || !type_it->is_string())
    return wire::encode_error(id, "malformed: string 'type' required");
  if (m_lastId && id <= *m_lastId)
    return wire::encode_error(id, "malformed: id must increase (last " + std::to_string(*m_lastId) + ")");
  m_lastId = id;

  const auto type = wire::parse_message_type(type_it->get<std::string>());
  if (!type)
    return wire::encode_error(id, "malformed: unknown message type '" + type_it->get<std::string>() + "'");

  try
    {
      switch (*type)
        {
        case MessageType::Hello: {
          if (m_state != State::AwaitHello)
            return order_violation(id, "HELLO already received");
          const auto v = msg.find("version");
          if (v == msg.end() || !v->is_string())
            return wire::encode_error(id, "malformed: HELLO requires string 'version'");
          if (v->get<std::string>() != wire::kProtocolVersion)
            return wire::encode_error(id, "protocol: unsupported version '" + v->get<std::string>() + "'");
          m_state = State::AwaitInit;
          return wire::dump(
              json{{"type", "HELLO"}, {"id", id}, {"ack", true}, {"version", wire::kProtocolVersion}});
        }

        case MessageType::Init: {
          if (m_state == State::AwaitHello)
            return order_violation(id, "HELLO required before INIT");
          if (m_state != State::AwaitInit)
            return order_violation(id, "INIT already received");
          ScenarioConfig config = build_default_scenario(42);
          if (auto s = msg.find("scenario"); s != msg.end() && !s->is_null())
            config = s->get<ScenarioConfig>();
          m_env.emplace(std::move(config));
          m_state = State::Ready;
          return wire::dump(json{{"type", "INIT"},
                                 {"id", id},
                                 {"ack", true},
                                 {"n_gnbs", m_env->n_gnbs()},
                                 {"observation_length", m_env->observation_length()},
                                 {"action_count", m_env->action_count()},
                                 {"episode_steps", m_env->config().episode_steps}});
        }

        case MessageType::Reset: {
          if (m_state == State::AwaitHello || m_state == State::AwaitInit)
            return order_violation(id, "INIT required before RESET");
          std::optional<std::uint64_t> seed;
          if (auto s = msg.find("seed"); s != msg.end() && !s->is_null())
            {
              if (!s->is_number_unsigned())
                return wire::encode_error(id, "malformed: 'seed' must be an unsigned integer");
              seed = s->get<std::uint64_t>();
            }
          Observation obs = m_env->reset(seed);
          m_state = State::Running;
          return wire::encode_step_result(id, obs, 0.0, false, m_env->reset_info());
        }

        case MessageType::Step: {
          if (m_state == State::AwaitHello || m_state == State::AwaitInit)
            return order_violation(id, "INIT required before STEP");
          if (m_state == State::Ready)
            return wire::encode_error(id, "lifecycle: reset required");
          if (m_env->terminated())
            {
              m_state = State::Ready;
              return wire::encode_error(id, "lifecycle: episode terminated, reset required");
            }
          const auto a = msg.find("action");
          if (a == msg.end() || !a->is_array())
            return wire::encode_error(id, "malformed: STEP requires an 'action' bit array");
          std::vector<std::uint8_t> bits;
          for (const auto& b : *a)
            {
              if (!b.is_number_unsigned() || b.get<std::uint64_t>() > 1)
                return wire::encode_error(id, "malformed: action bits must be 0 or 1");
              bits.push_back(static_cast<std::uint8_t>(b.get<std::uint64_t>()));
            }
          if (bits.size() != m_env->n_gnbs())
            return wire::encode_error(id, "malformed: action has " + std::to_string(bits.size())
                                              + " bits, expected " + std::to_string(m_env->n_gnbs()));
          return wire::encode_step_result(id, m_env->step(ActionBits(std::move(bits))));
        }

        case MessageType::KpmBatch: {
          if (m_state == State::AwaitHello || m_state == State::AwaitInit)
            return order_violation(id, "INIT required before KPM_BATCH");
          if (m_state == State::Ready)
            return wire::encode_error(id, "lifecycle: reset required");
          json records = json::array();
          for (const auto& r : m_env->last_ue_rows())
            records.push_back(wire::to_json(r));
          return wire::dump(json{{"type", "KPM_BATCH"}, {"id", id}, {"records", records}});
        }

        case MessageType::Bye:
          m_state = State::Closed;
          return wire::dump(json{{"type", "BYE"}, {"id", id}});

        case MessageType::StepResult:
        case MessageType::Error:
          return wire::encode_error(id, "malformed: '" + std::string(wire::to_string(*type))
                                            + "' is a server message");
        }
    }
  catch (const ConfigError& e)
    {
      return wire::encode_error(id, std::string("config: ") + e.what());
    }
  catch (const json::exception& e)
    {
      return wire::encode_error(id, std::string("malformed: ") + e.what());
    }
  return wire::encode_error(id, "malformed: unhandled message");
}

} // namespace ransim
