// Tail bounds for the maximum of N centered Gaussians and their Monte
// Carlo verification.
#pragma once

#include <cstdint>
#include <span>

#include "gmix/rng.hpp"

namespace gmix {

struct GaussMaxBound {
    long long n_vars = 0;
    double epsilon = 0.0;
    double upper_level = 0.0;      // (1+eps) sqrt(2 maxVar log N)
    double lower_level = 0.0;      // (1-eps) sqrt(2 minVar log N)
    double upper_prob_bound = 0.0; // N^{-eps}
    double lower_prob_bound = 0.0; // exp(-N^eps), valid when epn holds
    bool epn_satisfied = false;
};

GaussMaxBound gauss_max_bound(long long n_vars, double epsilon,
                              std::span<const double> variances);

struct GaussMaxMc {
    long long trials = 0;
    double upper_freq = 0.0;  // fraction of trials with max > upper_level
    double lower_freq = 0.0;  // fraction of trials with max < lower_level
    GaussMaxBound bound;
};

// i.i.d. standard normals, counter-based seeding per (trial, variable)
GaussMaxMc verify_gauss_max(long long n_vars, double epsilon,
                            long long trials, RngSeed seed);

}  // namespace gmix
