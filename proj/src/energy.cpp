/* SPDX-License-Identifier: BSD-3-Clause */

#include "ransim/energy.hpp"

#include <stdexcept>

namespace ransim {

double
cell_power_w(bool active, double load, const EnergyParams& params)
{
  if (!(load >= 0.0 && load <= 1.0))
    throw std::invalid_argument("cell_power_w: load must lie in [0, 1]");
  if (!active)
    return params.p_sleep_w;
  return params.p0_w + params.delta_p * load * params.p_max_tx_w;
}

double
period_energy_j(double power_w, double dt_s) noexcept
{
  return power_w * dt_s;
}

} // namespace ransim
