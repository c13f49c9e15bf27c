/* SPDX-License-Identifier: BSD-3-Clause */

#ifndef RANSIM_SESSION_HPP
#define RANSIM_SESSION_HPP

#include "ransim/env.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace ransim {

/**
 * Server side of one agent connection: HELLO → INIT → (RESET → STEP*)* → BYE.
 *
 * Every request line yields exactly one response line. Malformed input gets
 * an ERROR and leaves the state alone; an out-of-order request gets an ERROR
 * and, once INIT has happened, drops the session back to the post-INIT state
 * so the next legal request is RESET.
 */
class Session
{
public:
  enum class State
  {
    AwaitHello,
    AwaitInit,
    Ready,   // INIT done, no live episode
    Running, // episode in progress
    Closed,
  };

  /// Response to one request line, without the trailing newline.
  std::string handle(std::string_view line);

  State state() const noexcept { return m_state; }
  bool closed() const noexcept { return m_state == State::Closed; }
  const EnergySavingEnv* env() const noexcept { return m_env ? &*m_env : nullptr; }

private:
  std::string order_violation(std::int64_t id, std::string_view what);

  State m_state{State::AwaitHello};
  std::optional<EnergySavingEnv> m_env;
  std::optional<std::int64_t> m_lastId;
};

} // namespace ransim

#endif
