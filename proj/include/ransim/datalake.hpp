/* SPDX-License-Identifier: BSD-3-Clause */

#ifndef RANSIM_DATALAKE_HPP
#define RANSIM_DATALAKE_HPP

#include "ransim/kpm.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace ransim {

inline constexpr std::string_view kKpmCsvHeader =
    "imsi,timestamp_ms,serving_cell_id,dl_throughput_mbps,sinr_db,rsrp_dbm,demand_mbps,backlog_mbits";

/**
 * In-memory store of UE-level KPM rows under the (IMSI, timestamp) primary
 * key. Cell-level rows are kept by the environment, not here.
 */
class Datalake
{
public:
  /**
   * Insert a batch. Either every row is stored or none is.
   *
   * \throws DuplicateKeyError naming the first key that already exists or
   *         repeats within the batch
   */
  std::size_t insert_ue_rows(std::span<const KpmRecord> rows);

  /**
   * Rows with t_from_ms <= timestamp < t_to_ms, optionally filtered, ordered
   * by (timestamp, imsi).
   *
   * \throws std::invalid_argument if t_from_ms > t_to_ms
   */
  std::vector<KpmRecord> query_window(std::optional<std::uint64_t> imsi, std::optional<std::size_t> cell_id,
                                      std::int64_t t_from_ms, std::int64_t t_to_ms) const;

  /// Header plus one line per row in (timestamp, imsi) order.
  /// \throws IoError if the file cannot be written
  std::size_t export_csv(const std::filesystem::path& path) const;

  std::size_t size() const noexcept { return m_rows.size(); }
  bool empty() const noexcept { return m_rows.empty(); }
  bool contains(std::uint64_t imsi, std::int64_t timestamp_ms) const;
  std::vector<KpmRecord> rows() const;
  void clear() noexcept { m_rows.clear(); }

private:
  // Ordered by (timestamp, imsi) so windows are contiguous ranges.
  using Key = std::pair<std::int64_t, std::uint64_t>;
  std::map<Key, KpmRecord> m_rows;
};

/// Parse a file written by Datalake::export_csv.
std::vector<KpmRecord> read_kpm_csv(const std::filesystem::path& path);

} // namespace ransim

#endif
