#include "gmix/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace gmix {

std::uint64_t mix64(std::uint64_t v) {
    v += 0x9e3779b97f4a7c15ull;
    v = (v ^ (v >> 30)) * 0xbf58476d1ce4e5b9ull;
    v = (v ^ (v >> 27)) * 0x94d049bb133111ebull;
    return v ^ (v >> 31);
}

double uniform_at(RngSeed s, std::uint64_t index) {
    std::uint64_t h = mix64(mix64(mix64(s.seed) ^ s.stream) ^ index);
    // top 53 bits, shifted into (0,1): (h53 + 0.5) / 2^53 never hits 0 or 1
    return (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53;
}

double normal_at(RngSeed s, std::uint64_t index) {
    return inv_normal_cdf(uniform_at(s, index));
}

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

double normal_sf(double x) {
    return 0.5 * std::erfc(x / std::sqrt(2.0));
}

double inv_normal_cdf(double u) {
    if (!(u > 0.0 && u < 1.0))
        throw std::domain_error("inv_normal_cdf requires u in (0,1)");

    // Acklam's rational approximation (relative error < 1.15e-9)
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double cc[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                -2.400758277161838e+00, -2.549732539343734e+00,
                                4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    double x;
    if (u < plow) {
        double q = std::sqrt(-2.0 * std::log(u));
        x = (((((cc[0] * q + cc[1]) * q + cc[2]) * q + cc[3]) * q + cc[4]) * q + cc[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (u <= 1.0 - plow) {
        double q = u - 0.5;
        double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        double q = std::sqrt(-2.0 * std::log(1.0 - u));
        x = -(((((cc[0] * q + cc[1]) * q + cc[2]) * q + cc[3]) * q + cc[4]) * q + cc[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }

    // one Halley refinement against the exact CDF
    double e = normal_cdf(x) - u;
    double g = std::exp(-0.5 * x * x) / std::sqrt(2.0 * 3.14159265358979323846);
    double delta = e / g;
    x -= delta / (1.0 + 0.5 * x * delta);
    return x;
}

}  // namespace gmix
