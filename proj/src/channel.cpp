/* SPDX-License-Identifier: BSD-3-Clause */

#include "ransim/channel.hpp"

#include "ransim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ransim {

double
path_loss_umi_db(double d2d_m, double fc_ghz, double h_bs_m, double h_ut_m, bool is_los)
{
  if (!(d2d_m > 0.0))
    throw std::invalid_argument("path_loss_umi_db: distance must be > 0");
  if (!(fc_ghz > 0.0))
    throw std::invalid_argument("path_loss_umi_db: frequency must be > 0");

  const double dh = h_bs_m - h_ut_m;
  const double d3d = std::sqrt(d2d_m * d2d_m + dh * dh);
  const double los = 32.4 + 21.0 * std::log10(d3d) + 20.0 * std::log10(fc_ghz);
  if (is_los)
    return los;
  const double nlos = 22.4 + 35.3 * std::log10(d3d) + 21.3 * std::log10(fc_ghz) - 0.3 * (h_ut_m - 1.5);
  return std::max(los, nlos);
}

double
los_probability(double d2d_m) noexcept
{
  if (d2d_m <= 18.0)
    return 1.0;
  return 18.0 / d2d_m + std::exp(-d2d_m / 36.0) * (1.0 - 18.0 / d2d_m);
}

double
dbm_to_mw(double dbm) noexcept
{
  return std::pow(10.0, dbm / 10.0);
}

double
mw_to_dbm(double mw) noexcept
{
  return 10.0 * std::log10(mw);
}

double
noise_floor_dbm(double bandwidth_hz, double noise_figure_db) noexcept
{
  return kThermalNoiseDbmPerHz + 10.0 * std::log10(bandwidth_hz) + noise_figure_db;
}

double
sinr_db(std::size_t serving_cell, std::span<const LinkState> links, std::span<const std::uint8_t> active, double bandwidth_hz,
        double noise_figure_db)
{
  if (serving_cell >= links.size() || serving_cell >= active.size())
    throw std::invalid_argument("sinr_db: serving cell out of range");
  if (active[serving_cell] == 0)
    throw InvalidStateError("sinr_db: serving cell " + std::to_string(serving_cell) + " is inactive");

  double interference_mw = 0.0;
  for (std::size_t c = 0; c < links.size() && c < active.size(); ++c)
    if (c != serving_cell && active[c] != 0)
      interference_mw += dbm_to_mw(links[c].rsrp_dbm);
  const double noise_mw = dbm_to_mw(noise_floor_dbm(bandwidth_hz, noise_figure_db));
  return mw_to_dbm(dbm_to_mw(links[serving_cell].rsrp_dbm) / (interference_mw + noise_mw));
}

double
spectral_efficiency(double sinr_db, double max_se) noexcept
{
  return std::min(std::log2(1.0 + std::pow(10.0, sinr_db / 10.0)), max_se);
}

double
ue_throughput_mbps(double sinr_db, double bandwidth_share_hz, double max_se, double demand_mbps) noexcept
{
  if (bandwidth_share_hz <= 0.0)
    return 0.0;
  return std::min(demand_mbps, bandwidth_share_hz * spectral_efficiency(sinr_db, max_se) / 1e6);
}

} // namespace ransim
