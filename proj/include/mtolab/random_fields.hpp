#pragma once

#include <cstdint>
#include <vector>

#include "mtolab/cr.hpp"
#include "mtolab/sphere.hpp"

namespace mto {

/// c_k = U(-1, 1) * (1 + k)^{-2}, k = 0..K, from a seeded 64-bit Mersenne twister.
std::vector<double> random_smooth_coefficients(int K, std::uint64_t seed);

/// Zonal field with random smooth coefficients up to degree min(K, context truncation).
sphere::ZonalField random_zonal_field(const sphere::ContextPtr& ctx, int K, std::uint64_t seed);

/// Pluriharmonic disk field: random smooth amplitudes on (0,0) and on Re/Im of (j,0), j <= jmax.
cr::DiskField random_pluriharmonic_field(const cr::ContextPtr& ctx, int jmax, std::uint64_t seed);

}  // namespace mto
