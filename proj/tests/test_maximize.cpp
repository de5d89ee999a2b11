#include <cmath>
#include <memory>

#include "doctest.h"
#include "logtm/maximize.hpp"

using namespace logtm;

TEST_CASE("objective at zero") {
    const DimensionParams p = dim_params(2);
    auto grid = std::make_shared<const RadialGrid>(make_uniform_grid(1024, 1.0));
    const RadialProfile z = zero_profile(grid);
    // G(0) = c on the ball: Phi(0) = c^2 omega^2/(2 N^3) = c^2 pi^2/4
    const GrowthSpec ball = make_ball_critical(-1.5, 1.0, p);
    CHECK(objective(z, ball, Domain::ball, p) ==
          doctest::Approx(M_PI * M_PI / 4.0).epsilon(1e-6));
    const GrowthSpec space = make_space_critical(-1.5, 1.0, p);
    CHECK(objective(z, space, Domain::space, p) == doctest::Approx(0.0));
}

TEST_CASE("objective gradient matches central differences") {
    const DimensionParams p = dim_params(2);
    Rng rng(21);
    for (Domain dom : {Domain::ball, Domain::space}) {
        const double radius = (dom == Domain::ball) ? 1.0 : 8.0;
        const NormKind kind = (dom == Domain::ball) ? NormKind::gradient : NormKind::full;
        auto grid = std::make_shared<const RadialGrid>(make_geometric_grid(64, radius));
        const GrowthSpec spec = (dom == Domain::ball) ? make_ball_critical(-1.5, 1.0, p)
                                                      : make_space_critical(-1.5, 1.0, p);
        const RadialProfile u = random_feasible_profile(grid, rng, kind, p, 0.8);
        const RadialProfile g = objective_gradient(u, spec, dom, p);
        double gmax = 0.0;
        for (double x : g.values()) gmax = std::max(gmax, std::abs(x));
        const double h = 1e-6;
        for (std::size_t j = 0; j < u.size(); j += 9) {
            std::vector<double> up(u.values()), dn(u.values());
            up[j] += h;
            dn[j] -= h;
            const double fd = (objective(u.with_values(std::move(up)), spec, dom, p) -
                               objective(u.with_values(std::move(dn)), spec, dom, p)) /
                              (2.0 * h);
            CHECK(std::abs(fd - g[j]) <= 1e-5 * gmax);
        }
    }
}

TEST_CASE("constraint power gradient matches central differences") {
    const DimensionParams p = dim_params(2);
    Rng rng(22);
    auto grid = std::make_shared<const RadialGrid>(make_geometric_grid(48, 1.0));
    const RadialProfile u = random_feasible_profile(grid, rng, NormKind::gradient, p, 0.7);
    for (NormKind kind : {NormKind::gradient, NormKind::full}) {
        const std::vector<double> g = detail::constraint_power_gradient(u, kind, p);
        const double h = 1e-7;
        for (std::size_t j = 1; j < u.size(); j += 11) {
            std::vector<double> up(u.values()), dn(u.values());
            up[j] += h;
            dn[j] -= h;
            const double fd =
                (std::pow(constraint_norm(u.with_values(std::move(up)), kind, p), p.n) -
                 std::pow(constraint_norm(u.with_values(std::move(dn)), kind, p), p.n)) /
                (2.0 * h);
            CHECK(g[j] == doctest::Approx(fd).epsilon(1e-5));
        }
    }
}

TEST_CASE("isotonic projection") {
    std::vector<double> v{3.0, 1.0, 2.0, 0.5};
    const std::vector<double> w{1.0, 1.0, 1.0, 1.0};
    detail::pav_nonincreasing(v, w);
    CHECK(v[0] == doctest::Approx(3.0));
    CHECK(v[1] == doctest::Approx(1.5));
    CHECK(v[2] == doctest::Approx(1.5));
    CHECK(v[3] == doctest::Approx(0.5));
    for (std::size_t j = 1; j < v.size(); ++j) CHECK(v[j] <= v[j - 1] + 1e-15);
}

TEST_CASE("small ball maximization end to end") {
    const DimensionParams p = dim_params(2);
    const GrowthSpec spec = make_ball_critical(-1.5, 1.0, p);
    MaximizeOptions opts;
    opts.grid_size = 96;
    opts.max_iters = 600;
    const MaximizeResult r = maximize(spec, Domain::ball, p, opts);
    CHECK(r.converged);
    CHECK(r.phi_value > M_PI * M_PI / 4.0); // beats Phi(0)
    CHECK(r.constraint_residual <= 1e-6);
    CHECK(r.theta > 0.0);
    CHECK(r.el_residual <= 1e-3);
    CHECK(r.profile.nonincreasing(1e-9));
    CHECK(r.profile.nonnegative());
    // multiplier consistency across the two estimators
    const double th = estimate_theta(r.profile, spec, Domain::ball, p);
    const double th_hats = estimate_theta_hats(r.profile, spec, Domain::ball, p);
    CHECK(std::abs(th - th_hats) <= 0.05 * th);
}

TEST_CASE("small space maximization end to end") {
    const DimensionParams p = dim_params(2);
    const GrowthSpec spec = make_space_critical(-1.5, 1.0, p);
    MaximizeOptions opts;
    opts.grid_size = 128;
    opts.max_iters = 600;
    opts.radius = 32.0;
    const MaximizeResult r = maximize(spec, Domain::space, p, opts);
    CHECK(r.converged);
    CHECK(r.phi_value > 0.0);
    CHECK(r.constraint_residual <= 1e-6);
    CHECK(r.theta > 0.0);
    CHECK(r.el_residual <= 1e-3);
    CHECK(r.tail <= 1e-6 * r.phi_value);
}
