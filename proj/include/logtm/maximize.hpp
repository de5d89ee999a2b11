#ifndef LOGTM_MAXIMIZE_HPP
#define LOGTM_MAXIMIZE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <vector>

#include "logtm/bridge.hpp"
#include "logtm/dimension.hpp"
#include "logtm/euler_lagrange.hpp"
#include "logtm/growth.hpp"
#include "logtm/kernel.hpp"
#include "logtm/norms.hpp"
#include "logtm/profile.hpp"
#include "logtm/random.hpp"

namespace logtm {

/// Phi(u) = b0(G(u)) over the profile's grid (the unit ball, or the truncated
/// whole space).
inline double objective(const RadialProfile& u, const GrowthSpec& spec, Domain /*domain*/,
                        const DimensionParams& p) {
    return b0_radial(detail::growth_of(u, spec), p);
}

/// Nodal gradient dPhi/du_j, the exact adjoint of the discrete objective:
/// chain rule through the density v = G(u) using the reverse-pass gradient of
/// b0_radial.
inline RadialProfile objective_gradient(const RadialProfile& u, const GrowthSpec& spec,
                                        Domain /*domain*/, const DimensionParams& p) {
    const RadialProfile v = detail::growth_of(u, spec);
    std::vector<double> g = b0_radial_density_gradient(v, p);
    for (std::size_t j = 0; j < g.size(); ++j) g[j] *= spec.eval(u[j]).g;
    return u.with_values(std::move(g));
}

namespace detail {

/// Weighted pool-adjacent-violators projection onto nonincreasing sequences.
inline void pav_nonincreasing(std::vector<double>& v, const std::vector<double>& w) {
    const std::size_t m = v.size();
    std::vector<double> mean(m), weight(m);
    std::vector<std::size_t> count(m);
    std::size_t blocks = 0;
    for (std::size_t j = 0; j < m; ++j) {
        mean[blocks] = v[j];
        weight[blocks] = w[j];
        count[blocks] = 1;
        ++blocks;
        while (blocks > 1 && mean[blocks - 1] > mean[blocks - 2]) {
            const double tw = weight[blocks - 2] + weight[blocks - 1];
            mean[blocks - 2] = (weight[blocks - 2] * mean[blocks - 2] +
                                weight[blocks - 1] * mean[blocks - 1]) / tw;
            weight[blocks - 2] = tw;
            count[blocks - 2] += count[blocks - 1];
            --blocks;
        }
    }
    std::size_t j = 0;
    for (std::size_t b = 0; b < blocks; ++b)
        for (std::size_t k = 0; k < count[b]; ++k) v[j++] = mean[b];
}

/// Exact nodal derivative of the constraint norm raised to the N-th power.
inline std::vector<double> constraint_power_gradient(const RadialProfile& u, NormKind kind,
                                                     const DimensionParams& p) {
    const auto& r = u.grid().nodes();
    std::vector<double> n(u.size(), 0.0);
    for (std::size_t i = 0; i + 1 < r.size(); ++i) {
        const double dx = r[i + 1] - r[i];
        const double s = (u[i + 1] - u[i]) / dx;
        const double c = p.omega * p.n * std::pow(std::abs(s), p.n - 2) * s *
                         quad::power_moment(p.n - 1, r[i], r[i + 1]) / dx;
        n[i] -= c;
        n[i + 1] += c;
    }
    if (kind == NormKind::full) {
        const quad::GaussRule& g = quad::cell_rule();
        for (std::size_t i = 0; i + 1 < r.size(); ++i) {
            const double mid = 0.5 * (r[i] + r[i + 1]), half = 0.5 * (r[i + 1] - r[i]);
            for (std::size_t q = 0; q < g.x.size(); ++q) {
                const double rr = mid + half * g.x[q];
                const double t = (rr - r[i]) / (r[i + 1] - r[i]);
                const double uv = u[i] + t * (u[i + 1] - u[i]);
                const double c = half * g.w[q] * p.omega * p.n *
                                 std::pow(std::abs(uv), p.n - 2) * uv * std::pow(rr, p.n - 1);
                n[i] += c * (1.0 - t);
                n[i + 1] += c * t;
            }
        }
    }
    return n;
}

/// One Picard step for the radial Euler-Lagrange ODE
///   -(r^{N-1}|u'|^{N-2}u')' (+ r^{N-1}u^{N-1} on the space domain)
///     = theta r^{N-1} f_u g(u),
/// discretized by trapezoid prefix sums: integrate the source to get the flux,
/// recover the slope, integrate inward from u(R) = 0, renormalize.
inline RadialProfile el_picard_step(const RadialProfile& u, const GrowthSpec& spec, Domain domain,
                                    NormKind kind, const DimensionParams& p, double theta) {
    const RadialProfile f = potential_log(growth_of(u, spec), p);
    const auto& r = u.grid().nodes();
    const std::size_t m = r.size();
    auto source = [&](std::size_t j) {
        double x = theta * f[j] * spec.eval(u[j]).g;
        if (domain == Domain::space) x -= std::pow(u[j], p.n - 1);
        return std::pow(r[j], p.n - 1) * x;
    };
    std::vector<double> flux(m, 0.0);
    for (std::size_t i = 0; i + 1 < m; ++i)
        flux[i + 1] = flux[i] + 0.5 * (source(i) + source(i + 1)) * (r[i + 1] - r[i]);
    auto slope = [&](std::size_t j) {
        if (r[j] <= 0.0) return 0.0;
        return std::pow(std::max(0.0, flux[j]) / std::pow(r[j], p.n - 1), 1.0 / (p.n - 1));
    };
    std::vector<double> v(m, 0.0);
    for (std::size_t i = m - 1; i-- > 0;)
        v[i] = v[i + 1] + 0.5 * (slope(i) + slope(i + 1)) * (r[i + 1] - r[i]);
    RadialProfile out = u.with_values(std::move(v));
    const double nrm = constraint_norm(out, kind, p);
    return (nrm > 0.0) ? out.scaled(1.0 / nrm) : out;
}

/// Dense LU solve with partial pivoting; A is row-major n x n, b is
/// overwritten with the solution. Returns false on a singular pivot.
inline bool solve_dense(std::vector<double>& A, std::vector<double>& b, std::size_t n) {
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t best = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(A[r * n + c]) > std::abs(A[best * n + c])) best = r;
        if (A[best * n + c] == 0.0) return false;
        if (best != c) {
            for (std::size_t k = 0; k < n; ++k) std::swap(A[c * n + k], A[best * n + k]);
            std::swap(b[c], b[best]);
        }
        for (std::size_t r = c + 1; r < n; ++r) {
            const double f = A[r * n + c] / A[c * n + c];
            if (f == 0.0) continue;
            for (std::size_t k = c; k < n; ++k) A[r * n + k] -= f * A[c * n + k];
            b[r] -= f * b[c];
        }
    }
    for (std::size_t c = n; c-- > 0;) {
        double s = b[c];
        for (std::size_t k = c + 1; k < n; ++k) s -= A[c * n + k] * b[k];
        b[c] = s / A[c * n + c];
    }
    return true;
}

/// Lumped r^{N-1} node weights for the isotonic projection metric.
inline std::vector<double> node_weights(const RadialGrid& grid, int n) {
    const auto& r = grid.nodes();
    std::vector<double> w(r.size(), 0.0);
    for (std::size_t i = 0; i + 1 < r.size(); ++i) {
        const double half = 0.5 * quad::power_moment(n - 1, r[i], r[i + 1]);
        w[i] += half;
        w[i + 1] += half;
    }
    // keep the projection well-posed at r = 0 where the weight vanishes
    for (double& x : w) x = std::max(x, 1e-300);
    return w;
}

} // namespace detail

struct MaximizeOptions {
    std::size_t grid_size = 512;
    std::size_t max_iters = 5000;
    double step0 = 0.0; // 0: choose so the first update has norm 0.1
    double tol = 1e-9;
    bool monotone_projection = true;
    unsigned long seed = 0;
    double radius = 32.0; // space domain truncation
    std::size_t n_test = 16;
};

struct MaximizeResult {
    RadialProfile profile;
    double phi_value = 0.0;
    double theta = 0.0;
    std::size_t iterations = 0;
    double constraint_residual = 0.0;
    double el_residual = 0.0;
    bool converged = false;
    double tail = 0.0;
};

/// Projected gradient ascent of Phi over the unit ball of the constraint norm
/// (gradient norm on the ball, full W^{1,N} norm on the truncated whole
/// space), with backtracking line search and optional isotonic projection.
inline MaximizeResult maximize(const GrowthSpec& spec, Domain domain, const DimensionParams& p,
                               const MaximizeOptions& opts = {}) {
    const double radius = (domain == Domain::ball) ? 1.0 : opts.radius;
    const NormKind kind = (domain == Domain::ball) ? NormKind::gradient : NormKind::full;
    auto grid = std::make_shared<const RadialGrid>(make_geometric_grid(opts.grid_size, radius));
    const std::vector<double> pav_w = detail::node_weights(*grid, p.n);

    auto project = [&](std::vector<double> vals) {
        vals.back() = 0.0;
        for (double& x : vals) x = std::max(0.0, x);
        if (opts.monotone_projection) detail::pav_nonincreasing(vals, pav_w);
        RadialProfile u(grid, std::move(vals));
        const double nrm = constraint_norm(u, kind, p);
        return (nrm > 0.0) ? u.scaled(1.0 / nrm) : u;
    };
    auto safe_objective = [&](const RadialProfile& c, double& out) {
        try {
            out = objective(c, spec, domain, p);
            return true;
        } catch (const GrowthSaturationError&) {
            return false;
        }
    };

    // feasible decreasing initializer, optionally perturbed by the seed
    std::vector<double> init(grid->size());
    for (std::size_t j = 0; j < init.size(); ++j) init[j] = 1.0 - (*grid)[j] / radius;
    if (opts.seed != 0) {
        Rng rng(opts.seed);
        for (double& x : init) x *= 0.9 + 0.2 * rng.uniform();
    }
    RadialProfile u = project(std::move(init));
    double phi = objective(u, spec, domain, p);

    // warm-start scan over the truncated-log family supported in the unit
    // ball: the ascent landscape has shallow local maxima along the
    // concentration ridge, and this picks the right basin deterministically.
    // On the space domain wider supports only add negative far-field kernel
    // contributions, so the unit-ball family covers both domains.
    for (int ia = 0; ia < 16; ++ia) {
        for (int ip = 0; ip < 16; ++ip) {
            const double a = 0.2 + 2.3 * ia / 15.0;
            const double rho = std::pow(10.0, -4.0 + 3.9 * ip / 15.0);
            RadialProfile w = sample_profile(grid, [&](double r) {
                if (r <= rho) return a;
                if (r >= 1.0) return 0.0;
                return a * std::log(1.0 / r) / std::log(1.0 / rho);
            });
            const double nrm = constraint_norm(w, kind, p);
            if (!(nrm > 0.0)) continue;
            w = w.scaled(1.0 / nrm);
            double pw;
            if (safe_objective(w, pw) && pw > phi) {
                phi = pw;
                u = std::move(w);
            }
        }
    }

    double step = opts.step0;
    bool converged = false;
    std::size_t iter = 0;
    for (; iter < opts.max_iters; ++iter) {
        const RadialProfile g = objective_gradient(u, spec, domain, p);
        // ascent direction: gradient restricted to the free coordinates,
        // then made tangent to the constraint sphere so renormalization is a
        // second-order correction
        std::vector<double> d(g.values());
        d.back() = 0.0;
        for (std::size_t j = 0; j + 1 < d.size(); ++j)
            if (u[j] <= 0.0 && d[j] < 0.0) d[j] = 0.0;
        {
            std::vector<double> n = detail::constraint_power_gradient(u, kind, p);
            n.back() = 0.0;
            for (std::size_t j = 0; j + 1 < n.size(); ++j)
                if (u[j] <= 0.0 && g[j] < 0.0) n[j] = 0.0;
            double dn = 0.0, nn = 0.0;
            for (std::size_t j = 0; j < d.size(); ++j) {
                dn += d[j] * n[j];
                nn += n[j] * n[j];
            }
            if (nn > 0.0)
                for (std::size_t j = 0; j < d.size(); ++j) d[j] -= (dn / nn) * n[j];
        }
        if (step <= 0.0) {
            double dmax = 0.0;
            for (double x : d) dmax = std::max(dmax, std::abs(x));
            step = (dmax > 0.0) ? 0.1 / dmax : 1.0;
        }
        double s = step;
        bool accepted = false;
        RadialProfile cand = u;
        double phic = phi;
        for (int bt = 0; bt < 60; ++bt) {
            std::vector<double> vals(u.size());
            for (std::size_t j = 0; j < vals.size(); ++j) vals[j] = u[j] + s * d[j];
            RadialProfile c = project(std::move(vals));
            double pc;
            if (safe_objective(c, pc) && pc > phi) {
                cand = std::move(c);
                phic = pc;
                accepted = true;
                break;
            }
            s *= 0.5;
        }
        if (!accepted) {
            converged = true; // stationary: no ascent survives the projection
            break;
        }
        const double rel = (phic - phi) / std::max(1.0, std::abs(phic));
        u = std::move(cand);
        phi = phic;
        step = 2.0 * s;
        if (rel < opts.tol) {
            converged = true;
            ++iter;
            break;
        }
    }

    // polish phase 1: damped Picard iteration on the Euler-Lagrange ODE,
    // accepted only when the objective does not decrease; this walks along the
    // concentration ridge far faster than the projected gradient can
    {
        double tau = 1.0;
        for (std::size_t it = 0; it < 30000; ++it) {
            double th = 1.0; // ball: the renormalization absorbs the multiplier
            if (domain == Domain::space) {
                try {
                    th = estimate_theta(u, spec, domain, p);
                } catch (const std::exception&) {
                    break;
                }
            }
            const RadialProfile nu = detail::el_picard_step(u, spec, domain, kind, p, th);
            std::vector<double> v(u.size());
            for (std::size_t j = 0; j < u.size(); ++j) v[j] = (1.0 - tau) * u[j] + tau * nu[j];
            RadialProfile c(grid, std::move(v));
            const double nrm = constraint_norm(c, kind, p);
            if (nrm > 0.0) c = c.scaled(1.0 / nrm);
            double pc;
            if (safe_objective(c, pc) && pc >= phi) {
                u = std::move(c);
                phi = pc;
                tau = std::min(1.0, tau * 1.5);
            } else {
                tau *= 0.5;
                if (tau < 1e-7) break;
            }
        }
    }

    // polish phase 2: projected Newton on the stationarity system
    // grad Phi(u) = lambda grad ||u||^N, ||u||^N = 1, with a finite-difference
    // Jacobian; each iterate is clamped nonnegative and renormalized so
    // feasibility is preserved throughout
    {
        const std::size_t nf = u.size() - 1; // last node pinned to zero
        const std::size_t dim = nf + 1;
        auto kkt = [&](const RadialProfile& v, double lam, std::vector<double>& F) {
            const RadialProfile gp = objective_gradient(v, spec, domain, p);
            const std::vector<double> n = detail::constraint_power_gradient(v, kind, p);
            for (std::size_t j = 0; j < nf; ++j) F[j] = gp[j] - lam * n[j];
            F[nf] = std::pow(constraint_norm(v, kind, p), p.n) - 1.0;
        };
        double lam = 0.0;
        {
            const RadialProfile gp = objective_gradient(u, spec, domain, p);
            const std::vector<double> n = detail::constraint_power_gradient(u, kind, p);
            double gn = 0.0, nn = 0.0;
            for (std::size_t j = 0; j < nf; ++j) {
                gn += gp[j] * n[j];
                nn += n[j] * n[j];
            }
            if (nn > 0.0) lam = gn / nn;
        }
        RadialProfile best = u;
        double best_phi = phi;
        std::vector<double> F(dim), Fp(dim);
        kkt(u, lam, F);
        for (int nit = 0; nit < 60 && lam != 0.0; ++nit) {
            double scale = 0.0;
            for (std::size_t j = 0; j < nf; ++j) scale = std::max(scale, std::abs(F[j]));
            if (scale < 1e-11 && std::abs(F[nf]) < 1e-13) {
                converged = true;
                break;
            }
            std::vector<double> J(dim * dim);
            for (std::size_t k = 0; k < nf; ++k) {
                const double h = 1e-6 * std::max(1.0, std::abs(u[k]));
                std::vector<double> v(u.values());
                v[k] += h;
                kkt(RadialProfile(grid, std::move(v)), lam, Fp);
                for (std::size_t j = 0; j < dim; ++j) J[j * dim + k] = (Fp[j] - F[j]) / h;
            }
            {
                const std::vector<double> n = detail::constraint_power_gradient(u, kind, p);
                for (std::size_t j = 0; j < nf; ++j) J[j * dim + nf] = -n[j];
                J[nf * dim + nf] = 0.0;
            }
            std::vector<double> rhs(F);
            for (double& x : rhs) x = -x;
            if (!detail::solve_dense(J, rhs, dim)) break;
            double t = 1.0;
            bool accepted = false;
            for (int bt = 0; bt < 40 && !accepted; ++bt, t *= 0.5) {
                std::vector<double> v(u.values());
                for (std::size_t j = 0; j < nf; ++j) v[j] = std::max(0.0, v[j] + t * rhs[j]);
                RadialProfile c(grid, std::move(v));
                const double nrm = constraint_norm(c, kind, p);
                if (!(nrm > 0.0)) continue;
                // shrink-only rescale: keeps every iterate feasible without
                // disturbing the Newton path from inside the ball
                if (nrm > 1.0) c = c.scaled(1.0 / nrm);
                const double lc = lam + t * rhs[nf];
                kkt(c, lc, Fp);
                double ns = 0.0;
                for (std::size_t j = 0; j < nf; ++j) ns = std::max(ns, std::abs(Fp[j]));
                if (ns < scale || t < 1e-6) {
                    u = std::move(c);
                    lam = lc;
                    F = Fp;
                    accepted = true;
                }
            }
            if (!accepted) break;
        }
        double pu;
        if (safe_objective(u, pu) && pu >= best_phi) {
            phi = pu;
        } else { // keep the monotone trajectory if Newton wandered off
            u = std::move(best);
            phi = best_phi;
        }
    }

    // stationarity flag: first-order optimality of the free coordinates,
    // relative to the gradient scale
    {
        const RadialProfile gp = objective_gradient(u, spec, domain, p);
        const std::vector<double> n = detail::constraint_power_gradient(u, kind, p);
        double gn = 0.0, nn = 0.0;
        for (std::size_t j = 0; j + 1 < u.size(); ++j) {
            if (u[j] <= 0.0) continue;
            gn += gp[j] * n[j];
            nn += n[j] * n[j];
        }
        if (nn > 0.0) {
            const double lam = gn / nn;
            double worst = 0.0, scale = 0.0;
            for (std::size_t j = 0; j + 1 < u.size(); ++j) {
                if (u[j] <= 0.0) continue;
                worst = std::max(worst, std::abs(gp[j] - lam * n[j]));
                scale = std::max(scale, std::abs(gp[j]) + std::abs(lam * n[j]));
            }
            if (scale > 0.0 && worst <= 1e-6 * scale) converged = true;
        }
    }

    MaximizeResult res{u, phi, 0.0, iter, 0.0, 0.0, converged, 0.0};
    res.constraint_residual = std::abs(constraint_norm(u, kind, p) - 1.0);
    try {
        res.theta = estimate_theta(u, spec, domain, p);
        res.el_residual = el_residual(u, res.theta, spec, domain, p, opts.n_test);
    } catch (const std::exception&) {
        res.converged = false;
    }
    if (domain == Domain::space) res.tail = tail_bound(u, spec, p, radius);
    return res;
}

} // namespace logtm

#endif
