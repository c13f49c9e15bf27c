/* SPDX-License-Identifier: BSD-3-Clause */

#ifndef RANSIM_RNG_HPP
#define RANSIM_RNG_HPP

#include <cstdint>
#include <random>
#include <string_view>

namespace ransim {

using RandomEngine = std::mt19937_64;

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes) noexcept;

/**
 * Engine for the named stream of a simulation seed.
 *
 * The engine state depends only on (seed, name), so introducing a new
 * stream never perturbs the draws of an existing one.
 */
RandomEngine make_stream(std::uint64_t seed, std::string_view name);

} // namespace ransim

#endif
