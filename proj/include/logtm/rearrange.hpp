#ifndef LOGTM_REARRANGE_HPP
#define LOGTM_REARRANGE_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "logtm/dimension.hpp"
#include "logtm/kernel.hpp"
#include "logtm/norms.hpp"
#include "logtm/profile.hpp"

namespace logtm {

namespace detail {

inline double ipow(double x, int n) {
    double out = 1.0;
    for (; n > 0; n >>= 1, x *= x)
        if (n & 1) out *= x;
    return out;
}

/// N-volume of the superlevel set {v > s} in units of omega/N: the sum of
/// r_hi^N - r_lo^N over the maximal radial intervals where v > s. Exact for
/// piecewise-linear v. rn holds the precomputed node powers r_j^N.
inline double superlevel_rn(const RadialProfile& v, const std::vector<double>& rn, int n, double s) {
    const auto& r = v.grid().nodes();
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < r.size(); ++i) {
        const double va = v[i], vb = v[i + 1];
        const bool ia = va > s, ib = vb > s;
        if (ia && ib) {
            acc += rn[i + 1] - rn[i];
        } else if (ia != ib) {
            const double rc = r[i] + (s - va) * (r[i + 1] - r[i]) / (vb - va);
            if (ia)
                acc += ipow(rc, n) - rn[i];
            else
                acc += rn[i + 1] - ipow(rc, n);
        }
    }
    return acc;
}

} // namespace detail

/// Schwarz symmetrization on the profile's own grid: v*(r) is the least level
/// s whose superlevel set has N-volume at most that of B_r, found by bisection
/// on the exact piecewise-linear distribution function, then forced
/// nonincreasing by a running minimum.
inline RadialProfile schwarz_symmetrize(const RadialProfile& v, const DimensionParams& p) {
    if (!v.nonnegative()) throw std::domain_error("schwarz_symmetrize: profile must be nonnegative");
    const auto& r = v.grid().nodes();
    const double vmax = *std::max_element(v.values().begin(), v.values().end());
    std::vector<double> rn(r.size());
    for (std::size_t j = 0; j < r.size(); ++j) rn[j] = detail::ipow(r[j], p.n);
    std::vector<double> out(r.size());
    for (std::size_t j = 0; j < r.size(); ++j) {
        double lo = 0.0, hi = vmax;
        for (int it = 0; it < 64; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (detail::superlevel_rn(v, rn, p.n, mid) > rn[j])
                lo = mid;
            else
                hi = mid;
        }
        out[j] = hi;
    }
    for (std::size_t j = 1; j < out.size(); ++j) out[j] = std::min(out[j], out[j - 1]);
    return v.with_values(std::move(out));
}

struct RieszReport {
    double bplus_gap = 0.0;  // b+(v*) - b+(v)
    double bminus_gap = 0.0; // b-(v) - b-(v*)
    double polya_gap = 0.0;  // |grad v|_N - |grad v*|_N
};

/// Both sides of the rearrangement inequalities by the direct angular oracle;
/// all three gaps should be >= -tol.
inline RieszReport riesz_check(const RadialProfile& v, const DimensionParams& p,
                               std::size_t angular_nodes) {
    const RadialProfile vs = schwarz_symmetrize(v, p);
    const BilinearReport orig = b_split_direct(v, v, p, angular_nodes);
    const BilinearReport sym = b_split_direct(vs, vs, p, angular_nodes);
    RieszReport rep;
    rep.bplus_gap = sym.b_plus - orig.b_plus;
    rep.bminus_gap = orig.b_minus - sym.b_minus;
    rep.polya_gap = grad_norm(v, p) - grad_norm(vs, p);
    return rep;
}

} // namespace logtm

#endif
