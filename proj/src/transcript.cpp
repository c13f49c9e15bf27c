/* SPDX-License-Identifier: BSD-3-Clause */

#include "ransim/transcript.hpp"

#include "ransim/errors.hpp"
#include "ransim/rng.hpp"
#include "ransim/session.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

namespace ransim {

ReplayMismatch::ReplayMismatch(std::size_t line, std::string expected, std::string actual)
  : std::runtime_error("replay mismatch at transcript line " + std::to_string(line)),
    m_line(line),
    m_expected(std::move(expected)),
    m_actual(std::move(actual))
{
}

void
write_transcript(std::ostream& out, const Transcript& transcript)
{
  for (const auto& e : transcript)
    out << "> " << e.request << "\n< " << e.response << '\n';
}

Transcript
read_transcript(std::istream& in)
{
  Transcript t;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line))
    {
      ++n;
      if (line.size() < 2 || line[1] != ' ' || (line[0] != '>' && line[0] != '<'))
        throw IoError("transcript line " + std::to_string(n) + ": expected '> ' or '< ' prefix");
      const bool request = line[0] == '>';
      if (request != (n % 2 == 1))
        throw IoError("transcript line " + std::to_string(n) + ": requests and responses must alternate");
      if (request)
        t.push_back({line.substr(2), {}});
      else
        t.back().response = line.substr(2);
    }
  if (n % 2 != 0)
    throw IoError("transcript ends with an unanswered request");
  return t;
}

Transcript
load_transcript(const std::filesystem::path& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw IoError("cannot read " + path.string());
  return read_transcript(in);
}

void
save_transcript(const Transcript& transcript, const std::filesystem::path& path)
{
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw IoError("cannot write " + path.string());
  write_transcript(out, transcript);
}

std::string
transcript_digest(std::span<const std::string> responses)
{
  if (responses.empty())
    return {};
  std::string joined;
  for (const auto& r : responses)
    {
      joined += r;
      joined += '\n';
    }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fnv1a64(joined)));
  return buf;
}

std::string
replay_transcript(const Transcript& transcript)
{
  Session session;
  std::vector<std::string> responses;
  responses.reserve(transcript.size());
  for (std::size_t i = 0; i < transcript.size(); ++i)
    {
      std::string actual = session.handle(transcript[i].request);
      if (actual != transcript[i].response)
        throw ReplayMismatch(2 * i + 2, transcript[i].response, std::move(actual));
      responses.push_back(std::move(actual));
    }
  return transcript_digest(responses);
}

} // namespace ransim
