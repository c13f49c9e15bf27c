/* SPDX-License-Identifier: BSD-3-Clause */

#ifndef RANSIM_ENERGY_HPP
#define RANSIM_ENERGY_HPP

#include "ransim/scenario.hpp"

namespace ransim {

/**
 * Instantaneous base station power, W.
 *
 * Active: p0 + Δp · load · p_max_tx. Deactivated RF frontend: p_sleep,
 * regardless of load.
 *
 * \throws std::invalid_argument if load lies outside [0, 1]
 */
double cell_power_w(bool active, double load, const EnergyParams& params);

/// Energy drawn over one period at constant power.
double period_energy_j(double power_w, double dt_s) noexcept;

} // namespace ransim

#endif
