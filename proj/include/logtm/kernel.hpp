#ifndef LOGTM_KERNEL_HPP
#define LOGTM_KERNEL_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "logtm/dimension.hpp"
#include "logtm/norms.hpp"
#include "logtm/profile.hpp"
#include "logtm/quadrature.hpp"

namespace logtm {

/// Values of the split bilinear forms for one profile pair. gap is the
/// residual against the radial prefix-sum evaluation of b0.
struct BilinearReport {
    double b_plus = 0.0;
    double b_minus = 0.0;
    double b0 = 0.0;
    double gap = 0.0;
};

namespace detail {

inline void require_nonnegative(const RadialProfile& v, const char* who) {
    if (!v.nonnegative()) throw std::domain_error(std::string(who) + ": profile must be nonnegative");
}

} // namespace detail

/// |v|_* = omega ∫ ln(1+r) |v(r)| r^{N-1} dr.
inline double star_norm(const RadialProfile& v, const DimensionParams& p) {
    const auto& r = v.grid().nodes();
    double acc = quad::integrate_cells(v.grid(), [&](double rr, std::size_t i) {
        const double t = (rr - r[i]) / (r[i + 1] - r[i]);
        const double val = v[i] + t * (v[i + 1] - v[i]);
        return std::log1p(rr) * std::abs(val) * std::pow(rr, p.n - 1);
    });
    return p.omega * acc;
}

/// b0(v, v) through the radial prefix-sum reduction:
/// 2 omega^2 ∫ r^{N-1} v(r) ln(1/r) (∫_0^r ρ^{N-1} v dρ) dr.
inline double b0_radial(const RadialProfile& v, const DimensionParams& p) {
    detail::require_nonnegative(v, "b0_radial");
    const auto& r = v.grid().nodes();
    const std::vector<double> mass = quad::prefix_mass(v, p.n);
    double acc = quad::integrate_cells(v.grid(), [&](double rr, std::size_t i) {
        if (rr <= 0.0) return 0.0;
        const double t = (rr - r[i]) / (r[i + 1] - r[i]);
        const double val = v[i] + t * (v[i + 1] - v[i]);
        const double m = mass[i] + quad::cell_mass(p.n, r[i], r[i + 1], v[i], v[i + 1], rr).m;
        return std::pow(rr, p.n - 1) * val * (-std::log(rr)) * m;
    });
    return 2.0 * p.omega * p.omega * acc;
}

/// Exact gradient of b0_radial with respect to the nodal density values,
/// matching the quadrature above term by term (reverse pass).
inline std::vector<double> b0_radial_density_gradient(const RadialProfile& v, const DimensionParams& p) {
    const auto& r = v.grid().nodes();
    const std::size_t m = r.size();
    const std::vector<double> mass = quad::prefix_mass(v, p.n);
    const quad::GaussRule& g = quad::cell_rule();

    std::vector<double> grad(m, 0.0);
    // per-cell sensitivity of the outer integral to the prefix mass M_i
    std::vector<double> dmass(m, 0.0);

    for (std::size_t i = 0; i + 1 < m; ++i) {
        const double a = r[i], b = r[i + 1];
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (std::size_t q = 0; q < g.x.size(); ++q) {
            const double rr = mid + half * g.x[q];
            if (rr <= 0.0) continue;
            const double wq = half * g.w[q];
            const double t = (rr - a) / (b - a);
            const double val = v[i] + t * (v[i + 1] - v[i]);
            const quad::CellMass cm = quad::cell_mass(p.n, a, b, v[i], v[i + 1], rr);
            const double kern = std::pow(rr, p.n - 1) * (-std::log(rr));
            const double mtot = mass[i] + cm.m;
            // d/dv(rr)
            grad[i] += wq * kern * mtot * (1.0 - t);
            grad[i + 1] += wq * kern * mtot * t;
            // d/d(partial mass in this cell)
            const double c2 = wq * kern * val;
            grad[i] += c2 * cm.dva;
            grad[i + 1] += c2 * cm.dvb;
            // d/dM_i
            dmass[i] += c2;
        }
    }
    // M_i = sum of full cell masses of cells j < i; propagate suffix sums.
    double suffix = 0.0;
    for (std::size_t i = m - 1; i-- > 0;) {
        suffix += dmass[i + 1];
        const quad::CellMass cm = quad::cell_mass(p.n, r[i], r[i + 1], v[i], v[i + 1], r[i + 1]);
        grad[i] += suffix * cm.dva;
        grad[i + 1] += suffix * cm.dvb;
    }
    const double c = 2.0 * p.omega * p.omega;
    for (double& x : grad) x *= c;
    return grad;
}

/// b0(v, w) for two densities on a common grid, by the radial reduction
/// omega^2 ∫ r^{N-1} v(r) [ ln(1/r) ∫_0^r ρ^{N-1} w dρ + ∫_r^∞ ρ^{N-1} ln(1/ρ) w dρ ] dr.
/// w may be signed (it appears linearly); symmetric in (v, w) analytically.
inline double b0_cross(const RadialProfile& v, const RadialProfile& w, const DimensionParams& p) {
    if (!v.same_grid(w)) throw std::invalid_argument("b0_cross: profiles must share a grid");
    const auto& r = v.grid().nodes();
    const std::vector<double> mass = quad::prefix_mass(w, p.n);
    const std::vector<double> logm = quad::suffix_log_moment(w, p.n);
    double acc = quad::integrate_cells(v.grid(), [&](double rr, std::size_t i) {
        if (rr <= 0.0) return 0.0;
        const double t = (rr - r[i]) / (r[i + 1] - r[i]);
        const double val = v[i] + t * (v[i + 1] - v[i]);
        const double mw = mass[i] + quad::cell_mass(p.n, r[i], r[i + 1], w[i], w[i + 1], rr).m;
        // ∫_rr^{r_{i+1}} ρ^{N-1} ln ρ w dρ = full cell log mass - partial
        const quad::CellMass full = quad::cell_log_mass(p.n, r[i], r[i + 1], w[i], w[i + 1], r[i + 1]);
        const quad::CellMass part = quad::cell_log_mass(p.n, r[i], r[i + 1], w[i], w[i + 1], rr);
        const double tail_neg_log = -(logm[i + 1] + (full.m - part.m));
        return std::pow(rr, p.n - 1) * val * (-std::log(rr) * mw + tail_neg_log);
    });
    return p.omega * p.omega * acc;
}

/// The potential ln(1/|.|) * v evaluated at the grid nodes (Newton form).
inline RadialProfile potential_log(const RadialProfile& v, const DimensionParams& p) {
    detail::require_nonnegative(v, "potential_log");
    const auto& r = v.grid().nodes();
    const std::vector<double> mass = quad::prefix_mass(v, p.n);
    const std::vector<double> logm = quad::suffix_log_moment(v, p.n);
    std::vector<double> f(r.size());
    for (std::size_t j = 0; j < r.size(); ++j) {
        const double ln_term = (r[j] > 0.0) ? std::log(r[j]) * mass[j] : 0.0;
        f[j] = -p.omega * (ln_term + logm[j]);
    }
    return v.with_values(std::move(f));
}

/// b_plus and b_minus by direct triple quadrature over radius x radius x angle.
/// The independent oracle for the radial reduction; O(cells^2 * angular_nodes).
inline BilinearReport b_split_direct(const RadialProfile& v, const RadialProfile& w,
                                     const DimensionParams& p, std::size_t angular_nodes) {
    if (angular_nodes < 16) throw std::invalid_argument("b_split_direct: need at least 16 angular nodes");
    if (!v.same_grid(w)) throw std::invalid_argument("b_split_direct: profiles must share a grid");
    detail::require_nonnegative(v, "b_split_direct");
    detail::require_nonnegative(w, "b_split_direct");

    const auto& r = v.grid().nodes();
    const std::size_t cells = r.size() - 1;
    const double omega_sub = detail::sphere_surface_measure(p.n - 2);

    // angular rule with the sin^{N-2} weight folded in; the doubled rule
    // serves the diagonal cells where the kernel is steepest
    auto make_angles = [&](std::size_t a) {
        quad::GaussRule g = quad::gauss_legendre(a);
        std::vector<std::array<double, 2>> out(a); // {cos(gamma), weight}
        for (std::size_t q = 0; q < a; ++q) {
            const double gamma = 0.5 * M_PI * (g.x[q] + 1.0);
            out[q] = {std::cos(gamma),
                      0.5 * M_PI * g.w[q] * std::pow(std::sin(gamma), p.n - 2)};
        }
        return out;
    };
    const auto ang = make_angles(angular_nodes);
    const auto ang2 = make_angles(2 * angular_nodes);

    // radial midpoint per cell with the exact r^{N-1} cell weight
    std::vector<double> rm(cells), wt_v(cells), wt_w(cells);
    for (std::size_t i = 0; i < cells; ++i) {
        rm[i] = 0.5 * (r[i] + r[i + 1]);
        const double wc = quad::power_moment(p.n - 1, r[i], r[i + 1]);
        wt_v[i] = wc * v(rm[i]);
        wt_w[i] = wc * w(rm[i]);
    }

    double bp = 0.0, bm = 0.0;
    for (std::size_t i = 0; i < cells; ++i) {
        if (wt_v[i] == 0.0 && wt_w[i] == 0.0) continue;
        for (std::size_t j = 0; j < cells; ++j) {
            const double pair = wt_v[i] * wt_w[j];
            if (pair == 0.0) continue;
            const auto& rule = (i == j) ? ang2 : ang;
            const double a2 = rm[i] * rm[i] + rm[j] * rm[j];
            const double ab = 2.0 * rm[i] * rm[j];
            double kp = 0.0, km = 0.0;
            for (const auto& aq : rule) {
                const double d2 = a2 - ab * aq[0];
                const double ln_inv = -0.5 * std::log(d2);
                if (ln_inv > 0.0)
                    kp += aq[1] * ln_inv;
                else
                    km -= aq[1] * ln_inv;
            }
            bp += pair * kp;
            bm += pair * km;
        }
    }
    BilinearReport rep;
    const double c = p.omega * omega_sub;
    rep.b_plus = c * bp;
    rep.b_minus = c * bm;
    rep.b0 = b0_cross(v, w, p);
    rep.gap = std::abs(rep.b0 - (rep.b_plus - rep.b_minus));
    return rep;
}

} // namespace logtm

#endif
