#ifndef LOGTM_NORMS_HPP
#define LOGTM_NORMS_HPP

#include <cmath>
#include <stdexcept>

#include "logtm/dimension.hpp"
#include "logtm/profile.hpp"
#include "logtm/quadrature.hpp"

namespace logtm {

enum class NormKind { gradient, full };

/// |∇u|_N = (omega ∫ |u'|^N r^{N-1} dr)^{1/N}; exact for piecewise-linear u
/// since the slope is constant on each cell.
inline double grad_norm(const RadialProfile& u, const DimensionParams& p) {
    const auto& r = u.grid().nodes();
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < r.size(); ++i) {
        const double slope = (u[i + 1] - u[i]) / (r[i + 1] - r[i]);
        acc += std::pow(std::abs(slope), p.n) * quad::power_moment(p.n - 1, r[i], r[i + 1]);
    }
    return std::pow(p.omega * acc, 1.0 / p.n);
}

/// (omega ∫ |u|^{p_exp} r^{N-1} dr)^{1/p_exp} on the profile's grid.
inline double lp_norm(const RadialProfile& u, double p_exp, const DimensionParams& p) {
    if (p_exp < 1.0) throw std::domain_error("lp_norm: exponent must be >= 1");
    const auto& r = u.grid().nodes();
    double acc = quad::integrate_cells(u.grid(), [&](double rr, std::size_t i) {
        const double t = (rr - r[i]) / (r[i + 1] - r[i]);
        const double val = u[i] + t * (u[i + 1] - u[i]);
        return std::pow(std::abs(val), p_exp) * std::pow(rr, p.n - 1);
    });
    return std::pow(p.omega * acc, 1.0 / p_exp);
}

/// Full W^{1,N} norm (|∇u|_N^N + |u|_N^N)^{1/N}.
inline double w1n_norm(const RadialProfile& u, const DimensionParams& p) {
    const double g = grad_norm(u, p), l = lp_norm(u, p.n, p);
    return std::pow(std::pow(g, p.n) + std::pow(l, p.n), 1.0 / p.n);
}

inline double constraint_norm(const RadialProfile& u, NormKind kind, const DimensionParams& p) {
    return kind == NormKind::gradient ? grad_norm(u, p) : w1n_norm(u, p);
}

/// Radial retraction onto the unit ball of the chosen norm: u / max(1, ||u||).
inline RadialProfile rescale_to_ball(const RadialProfile& u, NormKind kind, const DimensionParams& p) {
    const double nrm = constraint_norm(u, kind, p);
    if (nrm <= 1.0) return u;
    return u.scaled(1.0 / nrm);
}

} // namespace logtm

#endif
