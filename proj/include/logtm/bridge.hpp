#ifndef LOGTM_BRIDGE_HPP
#define LOGTM_BRIDGE_HPP

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

#include "logtm/dimension.hpp"
#include "logtm/growth.hpp"
#include "logtm/kernel.hpp"
#include "logtm/norms.hpp"
#include "logtm/profile.hpp"

namespace logtm {

struct RadialBoundReport {
    bool holds = false;
    double worst_radius = 0.0;
};

/// Checks the radial-lemma bound u(r) <= C_N |u|_N / r at every positive node.
inline RadialBoundReport radial_bound_check(const RadialProfile& u, const DimensionParams& p) {
    if (!u.nonnegative() || !u.nonincreasing(1e-12))
        throw std::invalid_argument("radial_bound_check: profile must be nonnegative and nonincreasing");
    const double un = lp_norm(u, p.n, p);
    const auto& r = u.grid().nodes();
    RadialBoundReport rep;
    rep.holds = true;
    double worst_margin = std::numeric_limits<double>::infinity();
    rep.worst_radius = r.back();
    for (std::size_t j = 0; j < r.size(); ++j) {
        if (r[j] <= 0.0) continue;
        const double bound = p.c_n * un / r[j];
        const double margin = bound - u[j];
        if (margin < worst_margin) {
            worst_margin = margin;
            rep.worst_radius = r[j];
        }
        if (margin < -1e-9 * std::max(1.0, bound)) rep.holds = false;
    }
    return rep;
}

/// The lift U(r) = (1 + u(1)^N/C_N^N)^{1/N} [u(r)^{N/2} - u(1)^{N/2}]_+^{2/N}
/// on [0, 1]; takes a feasible whole-space profile to a profile on the unit
/// ball with grad_norm(U) <= 1.
inline RadialProfile lift_to_ball(const RadialProfile& u, const DimensionParams& p) {
    if (!u.nonnegative() || !u.nonincreasing(1e-12))
        throw std::domain_error("lift_to_ball: profile must be nonnegative and nonincreasing");
    if (w1n_norm(u, p) > 1.0 + 1e-9)
        throw std::domain_error("lift_to_ball: profile must satisfy w1n_norm <= 1");
    const double u1 = u(1.0);
    const double pref = std::pow(1.0 + std::pow(u1, p.n) / std::pow(p.c_n, p.n), 1.0 / p.n);
    const double half = 0.5 * p.n;
    std::vector<double> nodes;
    for (double r : u.grid().nodes()) {
        if (r < 1.0 - 1e-15)
            nodes.push_back(r);
        else
            break;
    }
    nodes.push_back(1.0);
    auto grid = std::make_shared<const RadialGrid>(RadialGrid(std::move(nodes)));
    std::vector<double> vals(grid->size());
    for (std::size_t j = 0; j < grid->size(); ++j) {
        const double bracket = std::max(0.0, std::pow(u((*grid)[j]), half) - std::pow(u1, half));
        vals[j] = pref * std::pow(bracket, 2.0 / p.n);
    }
    vals.back() = 0.0;
    return RadialProfile(std::move(grid), std::move(vals));
}

/// The boundedness functional
///   Phi_{b1,b2}(u1,u2) = omega^2 ∫_0^1 r^{N-1} v1(r) ln(1/r) ∫_0^r ρ^{N-1} v2 dρ dr
/// with v_i = (1+|u_i|)^{b_i} exp(alpha_N |u_i|^{N/(N-1)}).
inline double eval_phi_beta(const RadialProfile& u1, const RadialProfile& u2, double beta1,
                            double beta2, const DimensionParams& p) {
    if (beta1 > 0.0 || beta2 > 0.0 || beta1 + beta2 > -p.n / (p.n - 1.0))
        throw std::domain_error("eval_phi_beta: need beta1, beta2 <= 0 and beta1+beta2 <= -N/(N-1)");
    if (!u1.same_grid(u2)) throw std::invalid_argument("eval_phi_beta: profiles must share a grid");
    if (u1.grid().radius() > 1.0 + 1e-12)
        throw std::domain_error("eval_phi_beta: profiles must be supported in [0,1]");
    const double q = p.n / (p.n - 1.0);
    auto density = [&](const RadialProfile& u, double beta) {
        return u.map([&](double s) {
            const double x = p.alpha_n * std::pow(std::abs(s), q);
            if (x > GrowthSpec::kMaxExponent) throw GrowthSaturationError(s);
            return std::pow(1.0 + std::abs(s), beta) * std::exp(x);
        });
    };
    const RadialProfile v1 = density(u1, beta1);
    const RadialProfile v2 = density(u2, beta2);
    const auto& r = u1.grid().nodes();
    const std::vector<double> mass = quad::prefix_mass(v2, p.n);
    double acc = quad::integrate_cells(u1.grid(), [&](double rr, std::size_t i) {
        if (rr <= 0.0) return 0.0;
        const double t = (rr - r[i]) / (r[i + 1] - r[i]);
        const double val = v1[i] + t * (v1[i + 1] - v1[i]);
        const double m = mass[i] + quad::cell_mass(p.n, r[i], r[i + 1], v2[i], v2[i + 1], rr).m;
        return std::pow(rr, p.n - 1) * val * (-std::log(rr)) * m;
    });
    return p.omega * p.omega * acc;
}

/// Upper bound on the whole-space energy contribution neglected by truncating
/// at radius R. Any admissible extension beyond R has L^N mass at most the
/// unused norm budget eta^N = 1 - w1n_norm(u)^N and values at most
/// min(u(R), C_N eta / (r^N - R^N)^{1/N}); with the measured constant C for
/// G(s) <= C s^N on (0, u(R)], the neglected b_+ / b_- pieces are bounded by
/// the L^1/star-norm estimates. Zero when the budget or the edge value is zero.
inline double tail_bound(const RadialProfile& u, const GrowthSpec& spec, const DimensionParams& p,
                         double R) {
    if (R < 1.0) throw std::invalid_argument("tail_bound: R must be >= 1");
    if (!u.nonnegative() || !u.nonincreasing(1e-12))
        throw std::invalid_argument("tail_bound: profile must be nonnegative and nonincreasing");
    const double s_edge = u(R);
    const double w = w1n_norm(u, p);
    const double eta_n = std::max(0.0, 1.0 - std::pow(w, p.n));
    if (s_edge <= 0.0 || eta_n <= 0.0) return 0.0;

    // G(s) <= c_pow s^N on (0, s_edge], measured on a log grid
    double c_pow = 0.0;
    for (int k = 0; k < 400; ++k) {
        const double s = s_edge * std::pow(10.0, -6.0 + 6.0 * k / 399.0);
        c_pow = std::max(c_pow, spec.eval(s).G / std::pow(s, p.n));
    }

    const double eta = std::pow(eta_n, 1.0 / p.n);
    // |v_tail|_1 <= c_pow * (tail L^N mass)
    const double l1_tail = c_pow * eta_n;
    // |v_tail|_* via the pointwise envelope, integrated on a log grid out to a
    // fixed horizon (the envelope integrand decays like ln(r)/r)
    const double r_hor = R * 1e8;
    double star_tail = 0.0;
    const int steps = 4000;
    double prev_r = R;
    for (int k = 1; k <= steps; ++k) {
        const double rr = R * std::pow(r_hor / R, static_cast<double>(k) / steps);
        const double mid = std::sqrt(prev_r * rr);
        const double env = std::min(
            s_edge, p.c_n * eta / std::pow(std::pow(mid, p.n) - std::pow(R, p.n), 1.0 / p.n));
        star_tail += std::log1p(mid) * std::pow(mid, p.n - 1) * std::pow(env, p.n) * (rr - prev_r);
        prev_r = rr;
    }
    star_tail *= c_pow * p.omega;

    const RadialProfile v_in = u.map([&](double s) { return spec.eval(s).G; });
    const double l1_in = p.omega * quad::integrate_cells(u.grid(), [&](double rr, std::size_t i) {
                             const auto& rn = u.grid().nodes();
                             const double t = (rr - rn[i]) / (rn[i + 1] - rn[i]);
                             const double val = v_in[i] + t * (v_in[i + 1] - v_in[i]);
                             return std::pow(rr, p.n - 1) * val;
                         });
    const double star_in = star_norm(v_in, p);

    // b_- pieces: two cross terms plus tail-tail, each via |f|_1|g|_* + |g|_1|f|_*
    const double bminus = 2.0 * (l1_tail * star_in + l1_in * star_tail) + 2.0 * l1_tail * star_tail;
    // b_+ pieces: kernel supported on |x-y| < 1 with ∫_{B_1} ln(1/|z|) dz = omega/N^2
    const double sup_tail = c_pow * std::pow(s_edge, p.n);
    const double bplus = 2.0 * (l1_in + l1_tail) * sup_tail * p.omega / (p.n * p.n);
    return bminus + bplus;
}

} // namespace logtm

#endif
