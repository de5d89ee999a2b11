#include <cmath>
#include <memory>

#include "doctest.h"
#include "logtm/kernel.hpp"
#include "logtm/random.hpp"

using namespace logtm;

namespace {

GridPtr unit_grid(std::size_t m) {
    return std::make_shared<const RadialGrid>(make_uniform_grid(m, 1.0));
}

} // namespace

TEST_CASE("b0 of the unit-ball indicator") {
    // b0(1_{B_1}) = omega^2 / (2 N^3)
    for (int n : {2, 3}) {
        const DimensionParams p = dim_params(n);
        const RadialProfile one = constant_profile(unit_grid(4096), 1.0);
        const double expect = (n == 2) ? M_PI * M_PI / 4.0 : 8.0 * M_PI * M_PI / 27.0;
        CHECK(b0_radial(one, p) == doctest::Approx(expect).epsilon(1e-6));
        CHECK(b0_radial(one, p) ==
              doctest::Approx(p.omega * p.omega / (2.0 * n * n * n)).epsilon(1e-10));
    }
}

TEST_CASE("star norm of the unit-ball indicator") {
    const DimensionParams p = dim_params(2);
    const RadialProfile one = constant_profile(unit_grid(4096), 1.0);
    CHECK(star_norm(one, p) == doctest::Approx(M_PI / 2.0).epsilon(1e-8));
}

TEST_CASE("log potential of the unit-ball indicator") {
    const DimensionParams p = dim_params(2);
    // nodes at 0.5 and 1 exactly; support extends to 2 to probe the far field
    auto grid = std::make_shared<const RadialGrid>(make_uniform_grid(4096, 2.0));
    const RadialProfile ind =
        sample_profile(grid, [](double r) { return r <= 1.0 ? 1.0 : 0.0; });
    const RadialProfile f = potential_log(ind, p);
    // f(r) = 2 pi [ (1-r^2)/4 ] inside, -pi ln r outside
    CHECK(f(0.5) == doctest::Approx(1.1780972).epsilon(1e-4));
    CHECK(f(1.0) == doctest::Approx(0.0).epsilon(2e-3));
    CHECK(f(2.0) == doctest::Approx(-2.1775861).epsilon(1e-3));
}

TEST_CASE("b0_cross agrees with b0_radial and is symmetric") {
    const DimensionParams p = dim_params(2);
    Rng rng(7);
    const RadialProfile v = random_bump_profile(unit_grid(512), rng);
    const RadialProfile w = random_bump_profile(unit_grid(512), rng);
    CHECK(b0_cross(v, v, p) == doctest::Approx(b0_radial(v, p)).epsilon(1e-10));
    CHECK(b0_cross(v, w, p) == doctest::Approx(b0_cross(w, v, p)).epsilon(1e-10));
}

TEST_CASE("b0_radial nodal gradient matches finite differences") {
    const DimensionParams p = dim_params(2);
    Rng rng(3);
    const RadialProfile v = random_bump_profile(unit_grid(48), rng);
    const std::vector<double> g = b0_radial_density_gradient(v, p);
    double gmax = 0.0;
    for (double x : g) gmax = std::max(gmax, std::abs(x));
    const double h = 1e-6;
    for (std::size_t j = 0; j < v.size(); j += 7) {
        std::vector<double> up(v.values()), dn(v.values());
        up[j] += h;
        dn[j] -= h;
        const double fd = (b0_radial(v.with_values(std::move(up)), p) -
                           b0_radial(v.with_values(std::move(dn)), p)) /
                          (2.0 * h);
        CHECK(std::abs(fd - g[j]) <= 1e-6 * gmax);
    }
}

TEST_CASE("direct split oracle matches the radial reduction in the plane") {
    const DimensionParams p = dim_params(2);
    Rng rng(11);
    const RadialProfile v = random_step_profile(unit_grid(128), rng);
    const BilinearReport rep = b_split_direct(v, v, p, 512);
    CHECK(rep.b_plus >= 0.0);
    CHECK(rep.b_minus >= 0.0);
    CHECK(rep.gap <= 5e-3 * std::max(1.0, std::abs(rep.b0)));
}

TEST_CASE("kernel input validation") {
    const DimensionParams p = dim_params(2);
    auto grid = unit_grid(16);
    std::vector<double> vals(grid->size(), -1.0);
    const RadialProfile neg(grid, std::move(vals));
    CHECK_THROWS_AS(b0_radial(neg, p), std::domain_error);
    CHECK_THROWS_AS(potential_log(neg, p), std::domain_error);
    const RadialProfile ok = constant_profile(grid, 1.0);
    CHECK_THROWS_AS(b_split_direct(ok, ok, p, 8), std::invalid_argument);
}
