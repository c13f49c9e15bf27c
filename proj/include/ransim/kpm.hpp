/* SPDX-License-Identifier: BSD-3-Clause */

#ifndef RANSIM_KPM_HPP
#define RANSIM_KPM_HPP

#include <array>
#include <cstddef>
#include <cstdint>

namespace ransim {

/// UE-level telemetry row, keyed by (imsi, timestamp_ms).
struct KpmRecord
{
  std::uint64_t imsi{0};
  std::int64_t timestamp_ms{0};
  std::size_t serving_cell_id{0};
  double dl_throughput_mbps{0.0};
  double sinr_db{0.0};
  double rsrp_dbm{0.0};
  double demand_mbps{0.0};
  double backlog_mbits{0.0};

  friend bool operator==(const KpmRecord&, const KpmRecord&) = default;
};

inline constexpr std::size_t kCellKpmCount = 12;

/// Cell-centric energy-saving KPMs. These never enter the datalake.
struct CellKpmRow
{
  std::size_t cell_id{0};
  std::int64_t timestamp_ms{0};
  double dl_throughput_mbps{0.0};
  double num_attached_ues{0.0};
  double prb_utilization{0.0};
  double avg_sinr_db{0.0};
  double avg_rsrp_dbm{0.0};
  double power_w{0.0};
  double energy_j_last_period{0.0};
  double is_active{0.0};
  double ho_in{0.0};
  double ho_out{0.0};
  double avg_backlog_mbits{0.0};
  double qos_violation_ratio{0.0};

  /// The twelve KPMs in observation order.
  std::array<double, kCellKpmCount> kpms() const noexcept
  {
    return {dl_throughput_mbps, num_attached_ues, prb_utilization, avg_sinr_db, avg_rsrp_dbm,      power_w,
            energy_j_last_period, is_active,      ho_in,           ho_out,      avg_backlog_mbits, qos_violation_ratio};
  }

  friend bool operator==(const CellKpmRow&, const CellKpmRow&) = default;
};

// Offsets of individual KPMs inside one cell's observation block.
namespace kpm_index {
inline constexpr std::size_t kThroughput = 0;
inline constexpr std::size_t kAttachedUes = 1;
inline constexpr std::size_t kPrbUtilization = 2;
inline constexpr std::size_t kAvgSinr = 3;
inline constexpr std::size_t kAvgRsrp = 4;
inline constexpr std::size_t kPower = 5;
inline constexpr std::size_t kEnergy = 6;
inline constexpr std::size_t kIsActive = 7;
inline constexpr std::size_t kHoIn = 8;
inline constexpr std::size_t kHoOut = 9;
inline constexpr std::size_t kAvgBacklog = 10;
inline constexpr std::size_t kQosViolation = 11;
} // namespace kpm_index

} // namespace ransim

#endif
