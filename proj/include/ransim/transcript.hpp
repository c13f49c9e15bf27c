/* SPDX-License-Identifier: BSD-3-Clause */

#ifndef RANSIM_TRANSCRIPT_HPP
#define RANSIM_TRANSCRIPT_HPP

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ransim {

/// One request line and the response it produced.
struct TranscriptEntry
{
  std::string request;
  std::string response;

  friend bool operator==(const TranscriptEntry&, const TranscriptEntry&) = default;
};

using Transcript = std::vector<TranscriptEntry>;

/// Lines alternate "> request" and "< response".
void write_transcript(std::ostream& out, const Transcript& transcript);
Transcript read_transcript(std::istream& in);
Transcript load_transcript(const std::filesystem::path& path);
void save_transcript(const Transcript& transcript, const std::filesystem::path& path);

/// Hex FNV-1a over the newline-joined responses; "" for no responses.
std::string transcript_digest(std::span<const std::string> responses);

class ReplayMismatch : public std::runtime_error
{
public:
  ReplayMismatch(std::size_t line, std::string expected, std::string actual);

  /// 1-based line of the offending response in the transcript file.
  std::size_t line() const noexcept { return m_line; }
  const std::string& expected() const noexcept { return m_expected; }
  const std::string& actual() const noexcept { return m_actual; }

private:
  std::size_t m_line;
  std::string m_expected;
  std::string m_actual;
};

/**
 * Feed every recorded request to a fresh session and require byte-identical
 * responses.
 *
 * \return digest of the responses
 * \throws ReplayMismatch at the first differing response
 */
std::string replay_transcript(const Transcript& transcript);

} // namespace ransim

#endif
