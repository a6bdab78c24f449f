#include "gmix/gaussmax.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gmix {

GaussMaxBound gauss_max_bound(long long n_vars, double epsilon,
                              std::span<const double> variances) {
    if (n_vars < 1)
        throw std::invalid_argument("need at least one variable");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("epsilon must lie in (0,1)");
    double min_var = 1.0, max_var = 1.0;
    if (!variances.empty()) {
        min_var = *std::min_element(variances.begin(), variances.end());
        max_var = *std::max_element(variances.begin(), variances.end());
        if (!(min_var > 0.0))
            throw std::invalid_argument("variances must be positive");
    }
    const double n = static_cast<double>(n_vars);
    const double log_n = std::log(n);

    GaussMaxBound b;
    b.n_vars = n_vars;
    b.epsilon = epsilon;
    b.upper_level = (1.0 + epsilon) * std::sqrt(2.0 * max_var * log_n);
    b.lower_level = (1.0 - epsilon) * std::sqrt(2.0 * min_var * log_n);
    b.upper_prob_bound = std::pow(n, -epsilon);
    b.lower_prob_bound = std::exp(-std::pow(n, epsilon));
    const double two_pi = 2.0 * 3.14159265358979323846;
    double lhs = std::pow(n, epsilon - epsilon * epsilon) * (1.0 - epsilon) *
                 std::sqrt(2.0 * log_n) /
                 (std::sqrt(two_pi) *
                  (1.0 + 2.0 * (1.0 - epsilon) * (1.0 - epsilon) * log_n));
    b.epn_satisfied = lhs > 1.0;
    return b;
}

GaussMaxMc verify_gauss_max(long long n_vars, double epsilon,
                            long long trials, RngSeed seed) {
    if (trials < 1)
        throw std::invalid_argument("need at least one trial");
    GaussMaxMc mc;
    mc.trials = trials;
    mc.bound = gauss_max_bound(n_vars, epsilon, {});
    long long above = 0, below = 0;
    for (long long t = 0; t < trials; ++t) {
        double mx = -HUGE_VAL;
        std::uint64_t base =
            static_cast<std::uint64_t>(t) * static_cast<std::uint64_t>(n_vars);
        for (long long i = 0; i < n_vars; ++i)
            mx = std::max(mx, normal_at(seed, base + static_cast<std::uint64_t>(i)));
        if (mx > mc.bound.upper_level) ++above;
        if (mx < mc.bound.lower_level) ++below;
    }
    mc.upper_freq = static_cast<double>(above) / static_cast<double>(trials);
    mc.lower_freq = static_cast<double>(below) / static_cast<double>(trials);
    return mc;
}

}  // namespace gmix
