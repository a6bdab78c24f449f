// Counter-based deterministic Gaussian sampling. Every entry is derived
// independently from (seed, stream, flat index), so results do not depend
// on iteration or thread order.
//
// Generator (fixed for this release): three chained splitmix64 finalizer
// rounds over seed, stream and index produce a 64-bit hash; the top 53
// bits give a uniform in (0,1); the standard normal quantile is evaluated
// by Acklam's rational approximation refined with one Halley step, which
// is accurate to full double precision away from the extreme tails.
#pragma once

#include <cstdint>

namespace gmix {

struct RngSeed {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
};

std::uint64_t mix64(std::uint64_t v);

// uniform in the open interval (0,1)
double uniform_at(RngSeed s, std::uint64_t index);

// standard normal deviate for one counter position
double normal_at(RngSeed s, std::uint64_t index);

// quantile of the standard normal distribution, u in (0,1)
double inv_normal_cdf(double u);

// Phi(x), evaluated via erfc; relative error at double precision
double normal_cdf(double x);

// upper tail Pr(Z > x)
double normal_sf(double x);

}  // namespace gmix
