/* SPDX-License-Identifier: BSD-3-Clause */

#include "ransim/mobility.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ransim {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double
wrap_angle(double a) noexcept
{
  a = std::fmod(a, kTwoPi);
  if (a < 0.0)
    a += kTwoPi;
  return a >= kTwoPi ? 0.0 : a;
}

// Fold a coordinate back into [lo, hi]; returns true when an odd number of
// reflections happened (the velocity component flips).
bool
reflect(double& v, double lo, double hi) noexcept
{
  const double span = hi - lo;
  if (v >= lo && v <= hi)
    return false;
  double u = std::fmod(v - lo, 2.0 * span);
  if (u < 0.0)
    u += 2.0 * span;
  bool flipped = false;
  if (u > span)
    {
      u = 2.0 * span - u;
      flipped = true;
    }
  v = std::clamp(lo + u, lo, hi);
  return flipped;
}

} // namespace

void
redraw_walk(UeState& ue, RandomEngine& rng, const RandomWalkParams& params)
{
  std::uniform_real_distribution<double> heading(0.0, kTwoPi);
  std::uniform_real_distribution<double> speed(params.min_speed_mps, params.max_speed_mps);
  ue.heading_rad = wrap_angle(heading(rng));
  ue.speed_mps = speed(rng);
}

UeState
step_mobility(UeState ue, double dt_s, const Rect& bounds, RandomEngine& rng, const RandomWalkParams& params)
{
  double x = ue.position.x + ue.speed_mps * dt_s * std::cos(ue.heading_rad);
  double y = ue.position.y + ue.speed_mps * dt_s * std::sin(ue.heading_rad);
  const bool flip_x = reflect(x, bounds.x_min, bounds.x_max);
  const bool flip_y = reflect(y, bounds.y_min, bounds.y_max);
  ue.position = {x, y};
  if (flip_x)
    ue.heading_rad = wrap_angle(std::numbers::pi - ue.heading_rad);
  if (flip_y)
    ue.heading_rad = wrap_angle(-ue.heading_rad);

  ue.walk_elapsed_s += dt_s;
  // 1e-9 absorbs the drift of summing 0.1 s periods.
  while (ue.walk_elapsed_s + 1e-9 >= params.epoch_s)
    {
      ue.walk_elapsed_s = std::max(0.0, ue.walk_elapsed_s - params.epoch_s);
      redraw_walk(ue, rng, params);
    }
  return ue;
}

double
traffic_demand(const UeState& ue, const TrafficConfig& traffic, double dt_s) noexcept
{
  if (ue.traffic_class == TrafficClass::Elastic)
    return traffic.elastic_cap_mbps + ue.backlog_mbits / dt_s;
  return ue.cbr_rate_mbps + ue.backlog_mbits / dt_s;
}

double
backlog_after_service(const UeState& ue, double served_mbps, double dt_s) noexcept
{
  if (ue.traffic_class == TrafficClass::Elastic)
    return 0.0;
  return std::max(0.0, ue.demand_mbps - served_mbps) * dt_s;
}

} // namespace ransim
