#ifndef LOGTM_EULER_LAGRANGE_HPP
#define LOGTM_EULER_LAGRANGE_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "logtm/dimension.hpp"
#include "logtm/growth.hpp"
#include "logtm/kernel.hpp"
#include "logtm/norms.hpp"
#include "logtm/profile.hpp"

namespace logtm {

enum class Domain { ball, space };

/// h(r) = ln(1/r) ∫_0^r ρ^{N-1} v dρ + ∫_r^1 ρ^{N-1} ln(1/ρ) v dρ; the radial
/// kernel of the first variation on the ball. Equals potential_log(v)/omega.
inline RadialProfile h_ball(const RadialProfile& v, const DimensionParams& p) {
    if (!v.nonnegative()) throw std::domain_error("h_ball: profile must be nonnegative");
    if (v.grid().radius() > 1.0 + 1e-12)
        throw std::domain_error("h_ball: profile must be supported in [0,1]");
    return potential_log(v, p).scaled(1.0 / p.omega);
}

/// The log-convolution potential f = ln(1/|.|) * v, with a monotonicity check: the
/// continuum f is nonincreasing in r for v >= 0, so a nodewise increase beyond
/// tolerance indicates a quadrature failure.
inline RadialProfile potential_f(const RadialProfile& v, const DimensionParams& p) {
    RadialProfile f = potential_log(v, p);
    for (std::size_t j = 1; j < f.size(); ++j)
        if (f[j] > f[j - 1] + 1e-9)
            throw std::runtime_error("potential_f: potential not nonincreasing at node " +
                                     std::to_string(j) + "; quadrature inconsistency");
    return f;
}

namespace detail {

inline RadialProfile growth_of(const RadialProfile& u, const GrowthSpec& spec) {
    return u.map([&](double s) { return spec.eval(s).G; });
}

inline RadialProfile growth_prime_of(const RadialProfile& u, const GrowthSpec& spec) {
    return u.map([&](double s) { return spec.eval(s).g; });
}

/// omega ∫ |u'|^{N-2} u' phi' r^{N-1} dr, exact per cell.
inline double dirichlet_pairing(const RadialProfile& u, const RadialProfile& phi,
                                const DimensionParams& p) {
    const auto& r = u.grid().nodes();
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < r.size(); ++i) {
        const double su = (u[i + 1] - u[i]) / (r[i + 1] - r[i]);
        const double sp = (phi[i + 1] - phi[i]) / (r[i + 1] - r[i]);
        if (su == 0.0 || sp == 0.0) continue;
        acc += std::pow(std::abs(su), p.n - 2) * su * sp * quad::power_moment(p.n - 1, r[i], r[i + 1]);
    }
    return p.omega * acc;
}

/// omega ∫ |u|^{N-2} u phi r^{N-1} dr.
inline double mass_pairing(const RadialProfile& u, const RadialProfile& phi,
                           const DimensionParams& p) {
    const auto& r = u.grid().nodes();
    double acc = quad::integrate_cells(u.grid(), [&](double rr, std::size_t i) {
        const double t = (rr - r[i]) / (r[i + 1] - r[i]);
        const double uv = u[i] + t * (u[i + 1] - u[i]);
        const double pv = phi[i] + t * (phi[i + 1] - phi[i]);
        return std::pow(std::abs(uv), p.n - 2) * uv * pv * std::pow(rr, p.n - 1);
    });
    return p.omega * acc;
}

/// Indices of n_test hats equally spaced among the grid nodes with r in
/// (0, r_max).
inline std::vector<std::size_t> hat_nodes(const RadialGrid& grid, std::size_t n_test, double r_max) {
    std::vector<std::size_t> interior;
    for (std::size_t j = 1; j + 1 < grid.size(); ++j)
        if (grid[j] < r_max) interior.push_back(j);
    if (interior.size() < n_test) return interior;
    std::vector<std::size_t> out(n_test);
    for (std::size_t k = 0; k < n_test; ++k)
        out[k] = interior[(k + 1) * interior.size() / (n_test + 1)];
    return out;
}

inline RadialProfile hat_at(const GridPtr& grid, std::size_t j) {
    std::vector<double> v(grid->size(), 0.0);
    v[j] = 1.0;
    return RadialProfile(grid, std::move(v));
}

} // namespace detail

/// Multiplier from the weak equation tested against phi = u:
/// theta = ||u||^N / b0(G(u), g(u) u), with the gradient norm on the ball and
/// the full W^{1,N} norm on the whole space.
inline double estimate_theta(const RadialProfile& u, const GrowthSpec& spec, Domain domain,
                             const DimensionParams& p) {
    bool all_zero = true;
    for (double v : u.values())
        if (v != 0.0) all_zero = false;
    if (all_zero) throw std::domain_error("estimate_theta: u must be nonzero");
    const RadialProfile gu = detail::growth_of(u, spec);
    RadialProfile gpu_u = detail::growth_prime_of(u, spec);
    {
        std::vector<double> v(u.size());
        for (std::size_t j = 0; j < u.size(); ++j) v[j] = gpu_u[j] * u[j];
        gpu_u = u.with_values(std::move(v));
    }
    const double den = b0_cross(gu, gpu_u, p);
    if (den == 0.0) throw std::domain_error("estimate_theta: degenerate profile, b0(G(u), g(u)u) = 0");
    const double nrm = (domain == Domain::ball) ? grad_norm(u, p) : w1n_norm(u, p);
    return std::pow(nrm, p.n) / den;
}

/// Least-squares multiplier over the hat-function family; a consistency
/// cross-check for estimate_theta.
inline double estimate_theta_hats(const RadialProfile& u, const GrowthSpec& spec, Domain domain,
                                  const DimensionParams& p, std::size_t n_test = 16) {
    const double r_max = (domain == Domain::ball) ? u.grid().radius() : u.grid().radius() - 1.0;
    const auto idx = detail::hat_nodes(u.grid(), n_test, r_max);
    const RadialProfile gu = detail::growth_of(u, spec);
    const RadialProfile gpu = detail::growth_prime_of(u, spec);
    double num = 0.0, den = 0.0;
    for (std::size_t j : idx) {
        const RadialProfile phi = detail::hat_at(u.grid_ptr(), j);
        double lhs = detail::dirichlet_pairing(u, phi, p);
        if (domain == Domain::space) lhs += detail::mass_pairing(u, phi, p);
        std::vector<double> w(u.size(), 0.0);
        w[j] = gpu[j]; // g(u) phi is the hat scaled by g(u_j) nodewise
        const double rhs0 = b0_cross(gu, u.with_values(std::move(w)), p);
        num += lhs * rhs0;
        den += rhs0 * rhs0;
    }
    if (den == 0.0) throw std::domain_error("estimate_theta_hats: degenerate test family");
    return num / den;
}

/// One weak-equation test: the node of the hat test function, the two sides
/// of the identity, and their defect.
struct ElRow {
    std::size_t node = 0;
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
};

/// Both sides of the weak Euler-Lagrange identity against hat test functions
/// at n_test interior nodes (restricted to [0, R-1] on the space domain).
inline std::vector<ElRow> el_rows(const RadialProfile& u, double theta, const GrowthSpec& spec,
                                  Domain domain, const DimensionParams& p, std::size_t n_test = 16) {
    if (n_test < 4) throw std::invalid_argument("el_rows: need n_test >= 4");
    const double r_max = (domain == Domain::ball) ? u.grid().radius() : u.grid().radius() - 1.0;
    const auto idx = detail::hat_nodes(u.grid(), n_test, r_max);
    const RadialProfile gu = detail::growth_of(u, spec);
    const RadialProfile gpu = detail::growth_prime_of(u, spec);
    std::vector<ElRow> rows;
    rows.reserve(idx.size());
    for (std::size_t j : idx) {
        const RadialProfile phi = detail::hat_at(u.grid_ptr(), j);
        double lhs = detail::dirichlet_pairing(u, phi, p);
        if (domain == Domain::space) lhs += detail::mass_pairing(u, phi, p);
        std::vector<double> w(u.size(), 0.0);
        w[j] = gpu[j]; // g(u) phi is the hat scaled by g(u_j) nodewise
        const double rhs = theta * b0_cross(gu, u.with_values(std::move(w)), p);
        rows.push_back({j, lhs, rhs, std::abs(lhs - rhs)});
    }
    return rows;
}

/// Normalized weak Euler-Lagrange defect over hat test functions:
/// max_i |LHS_i - theta RHS_i| / max_i (|LHS_i| + |RHS_i|).
inline double el_residual(const RadialProfile& u, double theta, const GrowthSpec& spec,
                          Domain domain, const DimensionParams& p, std::size_t n_test = 16) {
    double worst = 0.0, scale = 0.0;
    for (const ElRow& row : el_rows(u, theta, spec, domain, p, n_test)) {
        worst = std::max(worst, row.residual);
        scale = std::max(scale, std::abs(row.lhs) + std::abs(row.rhs));
    }
    if (scale == 0.0) return 0.0;
    return worst / scale;
}

} // namespace logtm

#endif
