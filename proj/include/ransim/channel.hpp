/* SPDX-License-Identifier: BSD-3-Clause */

#ifndef RANSIM_CHANNEL_HPP
#define RANSIM_CHANNEL_HPP

#include <cstddef>
#include <cstdint>
#include <span>

namespace ransim {

/// Link between one UE and one cell, refreshed every control period.
/// LOS state and shadowing are drawn at reset and held for the episode.
struct LinkState
{
  std::size_t ue_index{0};
  std::size_t cell_id{0};
  bool is_los{false};
  double shadowing_db{0.0};
  double path_loss_db{0.0};
  double rsrp_dbm{0.0};
};

inline constexpr double kThermalNoiseDbmPerHz = -174.0;
inline constexpr double kShadowingSigmaLosDb = 4.0;
inline constexpr double kShadowingSigmaNlosDb = 7.82;

/**
 * UMi Street Canyon path loss in dB.
 *
 * LOS uses the single-slope form (no breakpoint); NLOS is floored by the
 * LOS value at the same geometry.
 *
 * \param d2d_m horizontal distance, must be > 0
 * \param fc_ghz carrier frequency, must be > 0
 * \param h_bs_m base station antenna height
 * \param h_ut_m UE antenna height, ≥ 1.5 m
 * \throws std::invalid_argument on non-positive distance or frequency
 */
double path_loss_umi_db(double d2d_m, double fc_ghz, double h_bs_m, double h_ut_m, bool is_los);

/// UMi LOS probability for a horizontal distance in meters.
double los_probability(double d2d_m) noexcept;

double dbm_to_mw(double dbm) noexcept;
double mw_to_dbm(double mw) noexcept;

double noise_floor_dbm(double bandwidth_hz, double noise_figure_db) noexcept;

/**
 * Downlink SINR of a UE served by `serving_cell`.
 *
 * `links` and `active` (0/1 flags) are indexed by cell id and cover every
 * cell on the serving carrier. All other active cells interfere; inactive ones are
 * silent.
 *
 * \throws InvalidStateError if the serving cell is inactive
 */
double sinr_db(std::size_t serving_cell, std::span<const LinkState> links, std::span<const std::uint8_t> active,
               double bandwidth_hz, double noise_figure_db);

/// Shannon spectral efficiency capped at max_se, bits/s/Hz.
double spectral_efficiency(double sinr_db, double max_se) noexcept;

/// min(demand, share · SE / 1e6) in Mbps.
double ue_throughput_mbps(double sinr_db, double bandwidth_share_hz, double max_se, double demand_mbps) noexcept;

} // namespace ransim

#endif
