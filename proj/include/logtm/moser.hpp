#ifndef LOGTM_MOSER_HPP
#define LOGTM_MOSER_HPP

#include <cmath>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "logtm/dimension.hpp"
#include "logtm/growth.hpp"
#include "logtm/kernel.hpp"
#include "logtm/norms.hpp"
#include "logtm/profile.hpp"

namespace logtm {

struct MoserRow {
    long n = 0;
    double phi = 0.0;
    double lower_bound = 0.0;
    double grad_norm = 0.0;
};

inline double moser_plateau(long n, const DimensionParams& p) {
    return std::pow(p.omega, -1.0 / p.n) * std::pow(std::log(static_cast<double>(n)),
                                                    (p.n - 1.0) / p.n);
}

/// Purpose-built grid for the n-th Moser profile: geometric spacing down to
/// 1e-8/n with 1/n inserted as an exact node so the plateau edge falls on a
/// breakpoint.
inline GridPtr make_moser_grid(long n, std::size_t m = 2048) {
    const double r_spike = 1.0 / static_cast<double>(n);
    RadialGrid g = make_geometric_grid_with_node(m, 1.0, 1e-8 * r_spike, r_spike);
    return std::make_shared<const RadialGrid>(std::move(g));
}

/// m_n(r) = omega^{-1/N} ln(1/r)/(ln n)^{1/N} on [1/n, 1], constant plateau
/// inside, 0 at r = 1. |grad m_n|_N = 1 exactly in the continuum.
inline RadialProfile moser_profile(long n, const DimensionParams& p, GridPtr grid) {
    if (n < 2) throw std::invalid_argument("moser_profile: n must be >= 2");
    const double r_spike = 1.0 / static_cast<double>(n);
    std::size_t below = 0;
    for (double r : grid->nodes())
        if (r < r_spike) ++below;
    if (below < 8)
        throw std::invalid_argument("moser_profile: grid does not resolve the spike; need >= 8 nodes below r_min = " +
                                    std::to_string(r_spike));
    const double ln_n = std::log(static_cast<double>(n));
    const double plateau = moser_plateau(n, p);
    std::vector<double> vals(grid->size());
    for (std::size_t j = 0; j < grid->size(); ++j) {
        const double r = (*grid)[j];
        if (r <= r_spike)
            vals[j] = plateau;
        else if (r >= 1.0)
            vals[j] = 0.0;
        else
            vals[j] = std::pow(p.omega, -1.0 / p.n) * (-std::log(r)) / std::pow(ln_n, 1.0 / p.n);
    }
    return RadialProfile(std::move(grid), std::move(vals));
}

/// The exponent of (ln n) in the blow-up bound: 2 beta (N-1)/N + 1.
/// Vanishes exactly at the threshold beta = -N/(2(N-1)).
inline double threshold_exponent(int n_dim, double beta) {
    if (n_dim < 2) throw std::invalid_argument("threshold_exponent: dimension must be >= 2");
    return (2.0 * beta * (n_dim - 1.0) + n_dim) / n_dim;
}

/// Lower bound for b0(G(m_n)) from the plateau alone:
///   (omega^2/N^2) c2^2 (ln n)^{2 beta (N-1)/N} (ln n + 1/(2N)),
/// with c2 = c1 omega^{-beta/N}, where c1 is the at-least constant
/// G(s) >= c1 s^beta e^{alpha_N s^q} for s >= s0. Requires plateau(n) >= s0.
inline double blowup_lower_bound(long n, double beta, double c1, const DimensionParams& p,
                                 double s0 = 1.0) {
    if (n < 2) throw std::invalid_argument("blowup_lower_bound: n must be >= 2");
    const double plateau = moser_plateau(n, p);
    if (plateau < s0)
        throw std::domain_error("blowup_lower_bound: plateau " + std::to_string(plateau) +
                                " below growth threshold s0 = " + std::to_string(s0));
    const double ln_n = std::log(static_cast<double>(n));
    const double c2 = c1 * std::pow(p.omega, -beta / p.n);
    const double nn = p.n;
    return (p.omega * p.omega / (nn * nn)) * c2 * c2 *
           std::pow(ln_n, 2.0 * beta * (nn - 1.0) / nn) * (ln_n + 1.0 / (2.0 * nn));
}

/// Φ(m_n) for a ball-critical growth, with the plateau value of G evaluated
/// through the identity exp(alpha_N plateau^{N/(N-1)}) = n^N instead of a
/// floating-point exponential. Also fills the analytic lower bound using the
/// at-least constant c1 = c (1 + 1/s0)^beta at s0 = min(1, plateau).
inline MoserRow phi_on_moser(long n, const GrowthSpec& spec, const DimensionParams& p,
                             std::size_t grid_size = 2048) {
    if (spec.family != GrowthFamily::ball_critical)
        throw std::invalid_argument("phi_on_moser: growth must be ball_critical");
    GridPtr grid = make_moser_grid(n, grid_size);
    const RadialProfile m = moser_profile(n, p, grid);
    const double plateau = moser_plateau(n, p);
    const double g_plateau = spec.c * std::pow(1.0 + plateau, spec.beta) *
                             std::pow(static_cast<double>(n), p.n);
    std::vector<double> v(m.size());
    for (std::size_t j = 0; j < m.size(); ++j) {
        if (m[j] >= plateau) {
            v[j] = g_plateau;
        } else {
            try {
                v[j] = spec.eval(m[j]).G;
            } catch (const GrowthSaturationError&) {
                throw std::runtime_error("phi_on_moser: growth saturated at radius " +
                                         std::to_string(m.grid()[j]));
            }
        }
    }
    MoserRow row;
    row.n = n;
    row.phi = b0_radial(m.with_values(std::move(v)), p);
    row.grad_norm = grad_norm(m, p);
    const double s0 = std::min(1.0, plateau);
    const double c1 = spec.c * std::pow(1.0 + 1.0 / s0, spec.beta);
    row.lower_bound = blowup_lower_bound(n, spec.beta, c1, p, s0);
    return row;
}

/// Ordinary least-squares slope of y against x.
inline double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit_slope: need >= 2 points");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= x.size();
    my /= y.size();
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        num += (x[i] - mx) * (y[i] - my);
        den += (x[i] - mx) * (x[i] - mx);
    }
    return num / den;
}

} // namespace logtm

#endif
