#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace mlnl {

/**
 * Normalization constant of the integral fractional Laplacian,
 *
 *   c(n,s) = 2^{2s} s Gamma(n/2 + s) / ( pi^{n/2} Gamma(1 - s) ),
 *
 * so that (-Delta)^s u(x) = c(n,s) P.V. Integral (u(x)-u(y)) |x-y|^{-n-2s} dy
 * recovers the Fourier symbol |xi|^{2s}.  Reference values:
 * c(1,1/2) = 1/pi, c(3,1/2) = 1/pi^2, and c(n,s) ~ s * Gamma(n/2)/pi^{n/2}
 * as s -> 0+.
 */
inline double normalization_constant(int dim, double s) {
    if (dim < 1)
        throw std::invalid_argument("normalization_constant: dimension must be positive, got " +
                                    std::to_string(dim));
    if (!(s > 0.0) || !(s < 1.0))
        throw std::invalid_argument("normalization_constant: s must lie in (0,1), got " +
                                    std::to_string(s));
    const double n = static_cast<double>(dim);
    return std::pow(2.0, 2.0 * s) * s * std::tgamma(0.5 * n + s) /
           (std::pow(M_PI, 0.5 * n) * std::tgamma(1.0 - s));
}

/**
 * Constant value of (-Delta)^s applied to the unit-ball profile
 * (1 - |z|^2)^s_+ inside the unit ball:
 *
 *   Lambda(n,s) = 2^{2s} Gamma(s+1) Gamma(n/2 + s) / Gamma(n/2).
 *
 * For n = 1, s = 1/2 this equals 1.  A profile rescaled from the unit ball
 * onto a smaller domain picks up the affine factor |A|^{2s}; the bump
 * (1 - |2x-1|^2)^s_+ on (0,1) therefore has constant fractional Laplacian
 * 2^{2s} * Lambda(1,s).
 */
inline double ball_profile_constant(int dim, double s) {
    if (dim < 1)
        throw std::invalid_argument("ball_profile_constant: dimension must be positive, got " +
                                    std::to_string(dim));
    if (!(s > 0.0) || !(s < 1.0))
        throw std::invalid_argument("ball_profile_constant: s must lie in (0,1), got " +
                                    std::to_string(s));
    const double n = static_cast<double>(dim);
    return std::pow(2.0, 2.0 * s) * std::tgamma(s + 1.0) * std::tgamma(0.5 * n + s) /
           std::tgamma(0.5 * n);
}

} // namespace mlnl
