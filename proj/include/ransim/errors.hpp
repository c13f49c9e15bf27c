/* SPDX-License-Identifier: BSD-3-Clause */

#ifndef RANSIM_ERRORS_HPP
#define RANSIM_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ransim {

/// A scenario that fails validation. Carries every violation found.
class ConfigError : public std::runtime_error
{
public:
  explicit ConfigError(std::vector<std::string> violations);

  const std::vector<std::string>& violations() const noexcept { return m_violations; }

private:
  std::vector<std::string> m_violations;
};

/// An operation that is illegal in the current state (serving cell off, ...).
class InvalidStateError : public std::logic_error
{
public:
  using std::logic_error::logic_error;
};

/// Environment used outside its reset/step lifecycle.
class LifecycleError : public std::logic_error
{
public:
  using std::logic_error::logic_error;
};

class DuplicateKeyError : public std::runtime_error
{
public:
  DuplicateKeyError(std::uint64_t imsi, std::int64_t timestamp_ms);

  std::uint64_t imsi() const noexcept { return m_imsi; }
  std::int64_t timestamp_ms() const noexcept { return m_timestampMs; }

private:
  std::uint64_t m_imsi;
  std::int64_t m_timestampMs;
};

class IoError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

} // namespace ransim

#endif
