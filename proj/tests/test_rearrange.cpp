#include <cmath>
#include <memory>

#include "doctest.h"
#include "logtm/norms.hpp"
#include "logtm/random.hpp"
#include "logtm/rearrange.hpp"

using namespace logtm;

namespace {

GridPtr unit_grid(std::size_t m) {
    return std::make_shared<const RadialGrid>(make_uniform_grid(m, 1.0));
}

} // namespace

TEST_CASE("symmetrization fixes nonincreasing profiles") {
    const DimensionParams p = dim_params(2);
    const RadialProfile cone =
        sample_profile(unit_grid(256), [](double r) { return 1.0 - r; });
    const RadialProfile s = schwarz_symmetrize(cone, p);
    for (std::size_t j = 0; j < cone.size(); ++j)
        CHECK(s[j] == doctest::Approx(cone[j]).epsilon(1e-9));
}

TEST_CASE("symmetrization of the increasing ramp") {
    // v(r) = r in the plane rearranges to sqrt(1 - r^2)
    const DimensionParams p = dim_params(2);
    const RadialProfile ramp = sample_profile(unit_grid(1024), [](double r) { return r; });
    const RadialProfile s = schwarz_symmetrize(ramp, p);
    for (double r : {0.1, 0.5, 0.9})
        CHECK(s(r) == doctest::Approx(std::sqrt(1.0 - r * r)).epsilon(1e-3));
    CHECK(s.nonincreasing(1e-12));
    CHECK(s.nonnegative());
}

TEST_CASE("equimeasurability of bump profiles") {
    const DimensionParams p = dim_params(2);
    Rng rng(5);
    const RadialProfile v = random_bump_profile(unit_grid(4096), rng);
    const RadialProfile s = schwarz_symmetrize(v, p);
    for (double pe : {1.0, 2.0, 4.0}) {
        const double a = lp_norm(v, pe, p), b = lp_norm(s, pe, p);
        CHECK(std::abs(a - b) / a <= 1e-6);
    }
}

TEST_CASE("riesz and polya-szego gaps") {
    const DimensionParams p = dim_params(2);
    Rng rng(9);
    const RadialProfile v = random_bump_profile(unit_grid(192), rng);
    const RieszReport rep = riesz_check(v, p, 256);
    CHECK(rep.bplus_gap >= -1e-4);
    CHECK(rep.bminus_gap >= -1e-4);
    CHECK(rep.polya_gap >= -1e-4);
}

TEST_CASE("symmetrization rejects signed profiles") {
    const DimensionParams p = dim_params(2);
    auto grid = unit_grid(16);
    std::vector<double> vals(grid->size(), -0.5);
    CHECK_THROWS_AS(schwarz_symmetrize(RadialProfile(grid, std::move(vals)), p),
                    std::domain_error);
}
