/* SPDX-License-Identifier: BSD-3-Clause */

#include "ransim/csv.hpp"

#include <charconv>
#include <stdexcept>
#include <system_error>
#include <utility>

namespace ransim {

namespace csv {

std::string
format_double(double value)
{
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc())
    throw std::runtime_error("format_double failed");
  return std::string(buf, end);
}

double
parse_double(std::string_view text)
{
  double value = 0.0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size())
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  return value;
}

std::string
quote(std::string_view field)
{
  if (field.find_first_of(",\"\r\n") == std::string_view::npos)
    return std::string(field);
  std::string out = "\"";
  for (char ch : field)
    {
      if (ch == '"')
        out += '"';
      out += ch;
    }
  out += '"';
  return out;
}

std::string
join(const std::vector<std::string>& fields)
{
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i)
    {
      if (i)
        line += ',';
      line += quote(fields[i]);
    }
  return line;
}

std::vector<std::string>
split(std::string_view line)
{
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i)
    {
      const char ch = line[i];
      if (quoted)
        {
          if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"')
            {
              current += '"';
              ++i;
            }
          else if (ch == '"')
            quoted = false;
          else
            current += ch;
        }
      else if (ch == '"')
        quoted = true;
      else if (ch == ',')
        fields.push_back(std::exchange(current, {}));
      else if (ch != '\r')
        current += ch;
    }
  fields.push_back(std::move(current));
  return fields;
}

} // namespace csv

} // namespace ransim
