/* SPDX-License-Identifier: BSD-3-Clause */

#ifndef RANSIM_ACTION_HPP
#define RANSIM_ACTION_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ransim {

/// Desired RF-frontend state per gNB; bit i drives gNB i (1 = on).
class ActionBits
{
public:
  ActionBits() = default;
  /// \throws std::invalid_argument if any element is not 0 or 1
  explicit ActionBits(std::vector<std::uint8_t> bits);

  static ActionBits all_on(std::size_t n) { return ActionBits(std::vector<std::uint8_t>(n, 1)); }
  static ActionBits all_off(std::size_t n) { return ActionBits(std::vector<std::uint8_t>(n, 0)); }

  std::size_t size() const noexcept { return m_bits.size(); }
  bool operator[](std::size_t i) const { return m_bits.at(i) != 0; }
  void set(std::size_t i, bool on) { m_bits.at(i) = on ? 1 : 0; }
  std::span<const std::uint8_t> bits() const noexcept { return m_bits; }
  std::size_t count_on() const noexcept;

  /// "1101..." with gNB 0 first.
  std::string to_string() const;
  /// \throws std::invalid_argument on characters other than '0'/'1'
  static ActionBits from_string(std::string_view text);

  friend bool operator==(const ActionBits&, const ActionBits&) = default;

private:
  std::vector<std::uint8_t> m_bits;
};

/// LSB-first expansion: bit i = (index >> i) & 1. Requires index < 2^n.
ActionBits decode_action(std::uint64_t index, std::size_t n);
std::uint64_t encode_action(const ActionBits& action);

std::size_t hamming_distance(const ActionBits& a, const ActionBits& b);
/// Cells that go from off in `prev` to on in `next`.
std::size_t count_activations(const ActionBits& prev, const ActionBits& next);

} // namespace ransim

#endif
