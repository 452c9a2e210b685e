#include "mlnl/fractional_kernel.hpp"

#include "doctest.h"

#include <cmath>
#include <stdexcept>

using namespace mlnl;

TEST_SUITE_BEGIN("kernel");

TEST_CASE("normalization constant reference values") {
    CHECK(normalization_constant(1, 0.5) == doctest::Approx(1.0 / M_PI).epsilon(1e-14));
    CHECK(normalization_constant(3, 0.5) == doctest::Approx(1.0 / (M_PI * M_PI)).epsilon(1e-14));
}

TEST_CASE("normalization constant vanishes linearly as s -> 0") {
    for (int dim = 1; dim <= 3; ++dim) {
        const double slope = std::tgamma(0.5 * dim) / std::pow(M_PI, 0.5 * dim);
        for (double s : {1e-6, 1e-8}) {
            CHECK(normalization_constant(dim, s) / s == doctest::Approx(slope).epsilon(1e-5));
        }
    }
}

TEST_CASE("normalization constant rejects out-of-range order") {
    CHECK_THROWS_AS(normalization_constant(1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(normalization_constant(1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(normalization_constant(0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(normalization_constant(1, -0.3), std::invalid_argument);
}

TEST_CASE("ball profile constant") {
    // 2^{2s} Gamma(s+1) Gamma(n/2+s) / Gamma(n/2); equals 1 at n=1, s=1/2
    CHECK(ball_profile_constant(1, 0.5) == doctest::Approx(1.0).epsilon(1e-14));
    // monotone in s at fixed n=1 near the ends, and always positive
    CHECK(ball_profile_constant(1, 0.25) > 0.0);
    CHECK(ball_profile_constant(3, 0.75) > 0.0);
    CHECK_THROWS_AS(ball_profile_constant(1, 1.0), std::invalid_argument);
}

TEST_SUITE_END();
