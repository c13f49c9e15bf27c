/* SPDX-License-Identifier: BSD-3-Clause */

#include "ransim/datalake.hpp"

#include "ransim/csv.hpp"
#include "ransim/errors.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

namespace ransim {

DuplicateKeyError::DuplicateKeyError(std::uint64_t imsi, std::int64_t timestamp_ms)
  : std::runtime_error("duplicate datalake key (imsi=" + std::to_string(imsi)
                       + ", timestamp_ms=" + std::to_string(timestamp_ms) + ")"),
    m_imsi(imsi),
    m_timestampMs(timestamp_ms)
{
}

std::size_t
Datalake::insert_ue_rows(std::span<const KpmRecord> rows)
{
  std::set<Key> batch;
  for (const auto& row : rows)
    {
      const Key key{row.timestamp_ms, row.imsi};
      if (m_rows.contains(key) || !batch.insert(key).second)
        throw DuplicateKeyError(row.imsi, row.timestamp_ms);
    }
  for (const auto& row : rows)
    m_rows.emplace(Key{row.timestamp_ms, row.imsi}, row);
  return rows.size();
}

std::vector<KpmRecord>
Datalake::query_window(std::optional<std::uint64_t> imsi, std::optional<std::size_t> cell_id,
                       std::int64_t t_from_ms, std::int64_t t_to_ms) const
{
  if (t_from_ms > t_to_ms)
    throw std::invalid_argument("query_window: t_from_ms > t_to_ms");
  std::vector<KpmRecord> out;
  const auto first = m_rows.lower_bound(Key{t_from_ms, 0});
  const auto last = m_rows.lower_bound(Key{t_to_ms, 0});
  for (auto it = first; it != last; ++it)
    {
      const KpmRecord& r = it->second;
      if (imsi && r.imsi != *imsi)
        continue;
      if (cell_id && r.serving_cell_id != *cell_id)
        continue;
      out.push_back(r);
    }
  return out;
}

bool
Datalake::contains(std::uint64_t imsi, std::int64_t timestamp_ms) const
{
  return m_rows.contains(Key{timestamp_ms, imsi});
}

std::vector<KpmRecord>
Datalake::rows() const
{
  std::vector<KpmRecord> out;
  out.reserve(m_rows.size());
  for (const auto& [key, row] : m_rows)
    out.push_back(row);
  return out;
}

std::size_t
Datalake::export_csv(const std::filesystem::path& path) const
{
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw IoError("cannot write " + path.string());
  out << kKpmCsvHeader << '\n';
  for (const auto& [key, r] : m_rows)
    out << csv::join({std::to_string(r.imsi), std::to_string(r.timestamp_ms), std::to_string(r.serving_cell_id),
                      csv::format_double(r.dl_throughput_mbps), csv::format_double(r.sinr_db),
                      csv::format_double(r.rsrp_dbm), csv::format_double(r.demand_mbps),
                      csv::format_double(r.backlog_mbits)})
        << '\n';
  out.flush();
  if (!out)
    throw IoError("write failed for " + path.string());
  return m_rows.size();
}

std::vector<KpmRecord>
read_kpm_csv(const std::filesystem::path& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw IoError("cannot read " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != kKpmCsvHeader)
    throw IoError(path.string() + ": unexpected KPM CSV header");
  std::vector<KpmRecord> rows;
  while (std::getline(in, line))
    {
      if (line.empty())
        continue;
      const auto f = csv::split(line);
      if (f.size() != 8)
        throw IoError(path.string() + ": expected 8 fields, got " + std::to_string(f.size()));
      rows.push_back(KpmRecord{
          .imsi = std::stoull(f[0]),
          .timestamp_ms = std::stoll(f[1]),
          .serving_cell_id = static_cast<std::size_t>(std::stoull(f[2])),
          .dl_throughput_mbps = csv::parse_double(f[3]),
          .sinr_db = csv::parse_double(f[4]),
          .rsrp_dbm = csv::parse_double(f[5]),
          .demand_mbps = csv::parse_double(f[6]),
          .backlog_mbits = csv::parse_double(f[7]),
      });
    }
  return rows;
}

} // namespace ransim
