/* SPDX-License-Identifier: BSD-3-Clause */

#ifndef RANSIM_CSV_HPP
#define RANSIM_CSV_HPP

#include <string>
#include <string_view>
#include <vector>

namespace ransim::csv {

/// Shortest decimal that parses back to the same double.
std::string format_double(double value);
double parse_double(std::string_view text);

/// RFC 4180 field quoting: quote when the field holds a comma, quote, CR or LF.
std::string quote(std::string_view field);

std::string join(const std::vector<std::string>& fields);

/// Split one record, honouring quoted fields. Embedded newlines are not supported.
std::vector<std::string> split(std::string_view line);

} // namespace ransim::csv

#endif
