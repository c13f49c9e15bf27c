/* SPDX-License-Identifier: BSD-3-Clause */

#include "ransim/action.hpp"

#include <algorithm>
#include <stdexcept>

namespace ransim {

ActionBits::ActionBits(std::vector<std::uint8_t> bits)
  : m_bits(std::move(bits))
{
  if (std::any_of(m_bits.begin(), m_bits.end(), [](std::uint8_t b) { return b > 1; }))
    throw std::invalid_argument("action bits must be 0 or 1");
}

std::size_t
ActionBits::count_on() const noexcept
{
  return static_cast<std::size_t>(std::count(m_bits.begin(), m_bits.end(), std::uint8_t{1}));
}

std::string
ActionBits::to_string() const
{
  std::string s;
  s.reserve(m_bits.size());
  for (auto b : m_bits)
    s.push_back(b ? '1' : '0');
  return s;
}

ActionBits
ActionBits::from_string(std::string_view text)
{
  std::vector<std::uint8_t> bits;
  for (char ch : text)
    {
      if (ch != '0' && ch != '1')
        throw std::invalid_argument("action string must contain only 0 and 1");
      bits.push_back(ch == '1' ? 1 : 0);
    }
  return ActionBits(std::move(bits));
}

ActionBits
decode_action(std::uint64_t index, std::size_t n)
{
  if (n > 63 || index >= (std::uint64_t{1} << n))
    throw std::invalid_argument("decode_action: index " + std::to_string(index) + " outside [0, 2^"
                                + std::to_string(n) + ")");
  std::vector<std::uint8_t> bits(n);
  for (std::size_t i = 0; i < n; ++i)
    bits[i] = static_cast<std::uint8_t>((index >> i) & 1U);
  return ActionBits(std::move(bits));
}

std::uint64_t
encode_action(const ActionBits& action)
{
  if (action.size() > 63)
    throw std::invalid_argument("encode_action: more than 63 cells");
  std::uint64_t index = 0;
  for (std::size_t i = 0; i < action.size(); ++i)
    if (action[i])
      index |= std::uint64_t{1} << i;
  return index;
}

std::size_t
hamming_distance(const ActionBits& a, const ActionBits& b)
{
  if (a.size() != b.size())
    throw std::invalid_argument("hamming_distance: length mismatch");
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    d += a[i] != b[i] ? 1 : 0;
  return d;
}

std::size_t
count_activations(const ActionBits& prev, const ActionBits& next)
{
  if (prev.size() != next.size())
    throw std::invalid_argument("count_activations: length mismatch");
  std::size_t n = 0;
  for (std::size_t i = 0; i < prev.size(); ++i)
    n += (!prev[i] && next[i]) ? 1 : 0;
  return n;
}

} // namespace ransim
