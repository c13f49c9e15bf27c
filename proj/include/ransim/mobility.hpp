/* SPDX-License-Identifier: BSD-3-Clause */

#ifndef RANSIM_MOBILITY_HPP
#define RANSIM_MOBILITY_HPP

#include "ransim/rng.hpp"
#include "ransim/scenario.hpp"

#include <cstdint>

namespace ransim {

enum class TrafficClass
{
  Cbr,
  Elastic,
};

using Imsi = std::uint64_t;

struct UeState
{
  Imsi imsi{1};
  Vec2 position{};
  double heading_rad{0.0};
  double speed_mps{1.0};
  double walk_elapsed_s{0.0}; // time since the last heading/speed draw
  TrafficClass traffic_class{TrafficClass::Elastic};
  double cbr_rate_mbps{0.0};
  double demand_mbps{0.0};
  std::size_t serving_cell{0};
  double backlog_mbits{0.0};

  // Last service outcome, refreshed each period.
  double served_mbps{0.0};
  double sinr_db{0.0};
  double rsrp_dbm{0.0};
};

/// Draw a fresh heading in [0, 2π) and speed in [min, max].
void redraw_walk(UeState& ue, RandomEngine& rng, const RandomWalkParams& params = {});

/**
 * Advance one UE by dt_s along its heading, reflecting off the area
 * boundary. Heading and speed are re-drawn each time the accumulated walk
 * time reaches the epoch.
 */
UeState step_mobility(UeState ue, double dt_s, const Rect& bounds, RandomEngine& rng,
                      const RandomWalkParams& params = {});

/**
 * Offered downlink rate for the coming period.
 *
 * CBR flows offer their rate plus whatever backlog is queued. Elastic flows
 * are full-buffer up to the cap and never queue.
 */
double traffic_demand(const UeState& ue, const TrafficConfig& traffic, double dt_s) noexcept;

/// Backlog left after serving `served_mbps` against the UE's current demand.
double backlog_after_service(const UeState& ue, double served_mbps, double dt_s) noexcept;

} // namespace ransim

#endif
