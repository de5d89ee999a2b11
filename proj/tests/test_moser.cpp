#include <cmath>

#include "doctest.h"
#include "logtm/moser.hpp"

using namespace logtm;

TEST_CASE("moser profiles have unit gradient norm") {
    for (int nd : {2, 3}) {
        const DimensionParams p = dim_params(nd);
        for (long n : {10L, 100L, 1000L, 10000L}) {
            const RadialProfile m = moser_profile(n, p, make_moser_grid(n));
            CHECK(std::abs(grad_norm(m, p) - 1.0) <= 1e-4);
            CHECK(m.nonincreasing(1e-12));
        }
    }
}

TEST_CASE("plateau value") {
    const DimensionParams p = dim_params(2);
    // omega^{-1/2} (ln 10)^{1/2}
    CHECK(moser_plateau(10, p) == doctest::Approx(0.6053658393399102).epsilon(1e-12));
    const RadialProfile m = moser_profile(10, p, make_moser_grid(10));
    CHECK(m(0.05) == doctest::Approx(moser_plateau(10, p)).epsilon(1e-12));
    CHECK(m(1.0) == doctest::Approx(0.0));
}

TEST_CASE("threshold exponent vanishes exactly at beta*") {
    for (int nd = 2; nd <= 10; ++nd) {
        const double bstar = -nd / (2.0 * (nd - 1.0));
        CHECK(threshold_exponent(nd, bstar) == 0.0);
    }
    CHECK(threshold_exponent(2, -1.0) == 0.0); // the planar case
    CHECK(threshold_exponent(2, -0.75) == doctest::Approx(0.25));
    CHECK_THROWS_AS(threshold_exponent(1, -1.0), std::invalid_argument);
}

TEST_CASE("blow-up above threshold") {
    const DimensionParams p = dim_params(2);
    const GrowthSpec spec = make_ball_critical(-0.75, 1.0, p);
    double prev = -1.0;
    for (long n : {100L, 1000L, 10000L}) {
        const MoserRow row = phi_on_moser(n, spec, p);
        CHECK(row.phi >= row.lower_bound);
        CHECK(row.phi > prev);
        CHECK(std::abs(row.grad_norm - 1.0) <= 1e-4);
        prev = row.phi;
    }
}

TEST_CASE("lower bound needs the plateau above the growth threshold") {
    const DimensionParams p = dim_params(2);
    CHECK_THROWS_AS(blowup_lower_bound(3, -0.75, 1.0, p, 1.0), std::domain_error);
}

TEST_CASE("under-resolved grids are rejected") {
    const DimensionParams p = dim_params(2);
    auto coarse = std::make_shared<const RadialGrid>(make_uniform_grid(64, 1.0));
    CHECK_THROWS_AS(moser_profile(1000000, p, coarse), std::invalid_argument);
}

TEST_CASE("fit_slope recovers a line") {
    CHECK(fit_slope({0.0, 1.0, 2.0, 3.0}, {1.0, 3.0, 5.0, 7.0}) == doctest::Approx(2.0));
    CHECK_THROWS_AS(fit_slope({1.0}, {1.0}), std::invalid_argument);
}
