#ifndef LOGTM_QUADRATURE_HPP
#define LOGTM_QUADRATURE_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "logtm/profile.hpp"

namespace logtm {
namespace quad {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
    std::vector<double> x, w;
};

/// Nodes by Newton iteration on P_n; standard construction, deterministic.
inline GaussRule gauss_legendre(std::size_t n) {
    if (n == 0) throw std::invalid_argument("gauss_legendre: order must be positive");
    GaussRule g;
    g.x.resize(n);
    g.w.resize(n);
    const std::size_t m = (n + 1) / 2;
    for (std::size_t i = 0; i < m; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        g.x[i] = -x;
        g.x[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        g.w[i] = w;
        g.w[n - 1 - i] = w;
    }
    return g;
}

// 4-point rule used for per-cell integration of smooth integrands.
inline const GaussRule& cell_rule() {
    static const GaussRule g = gauss_legendre(4);
    return g;
}

/// Closed form of ∫_a^x r^k dr.
inline double power_moment(int k, double a, double x) {
    return (std::pow(x, k + 1) - std::pow(a, k + 1)) / (k + 1);
}

/// Closed form of ∫_a^x r^k ln r dr; the integrand extends continuously by 0
/// to r = 0 for k >= 0.
inline double log_moment(int k, double a, double x) {
    auto anti = [k](double r) {
        if (r == 0.0) return 0.0;
        double c = 1.0 / (k + 1);
        return std::pow(r, k + 1) * c * (std::log(r) - c);
    };
    return anti(x) - anti(a);
}

/// Partial mass ∫_a^x ρ^{n-1} v(ρ) dρ over one cell [a,b] with v linear,
/// together with its derivatives in the endpoint values.
struct CellMass {
    double m, dva, dvb;
};

inline CellMass cell_mass(int n, double a, double b, double va, double vb, double x) {
    const double i0 = power_moment(n - 1, a, x);
    const double i1 = power_moment(n, a, x);
    const double s = (i1 - a * i0) / (b - a);
    CellMass c;
    c.dva = i0 - s;
    c.dvb = s;
    c.m = va * c.dva + vb * c.dvb;
    return c;
}

/// ∫_a^x ρ^{n-1} ln(ρ) v(ρ) dρ over one cell with v linear.
inline CellMass cell_log_mass(int n, double a, double b, double va, double vb, double x) {
    const double l0 = log_moment(n - 1, a, x);
    const double l1 = log_moment(n, a, x);
    const double s = (l1 - a * l0) / (b - a);
    CellMass c;
    c.dva = l0 - s;
    c.dvb = s;
    c.m = va * c.dva + vb * c.dvb;
    return c;
}

/// Exact prefix masses M_j = ∫_0^{r_j} ρ^{n-1} v dρ at all nodes.
inline std::vector<double> prefix_mass(const RadialProfile& v, int n) {
    const auto& r = v.grid().nodes();
    std::vector<double> m(r.size(), 0.0);
    for (std::size_t i = 0; i + 1 < r.size(); ++i)
        m[i + 1] = m[i] + cell_mass(n, r[i], r[i + 1], v[i], v[i + 1], r[i + 1]).m;
    return m;
}

/// Exact suffix log-moments T_j = ∫_{r_j}^{R} ρ^{n-1} ln(ρ) v dρ at all nodes.
inline std::vector<double> suffix_log_moment(const RadialProfile& v, int n) {
    const auto& r = v.grid().nodes();
    std::vector<double> t(r.size(), 0.0);
    for (std::size_t i = r.size() - 1; i-- > 0;)
        t[i] = t[i + 1] + cell_log_mass(n, r[i], r[i + 1], v[i], v[i + 1], r[i + 1]).m;
    return t;
}

/// ∫_0^R f(r) dr with the 4-point rule on every grid cell. f must be smooth
/// within each cell (piecewise-linear profile data composed with smooth maps).
template <typename F>
double integrate_cells(const RadialGrid& grid, F&& f) {
    const auto& r = grid.nodes();
    const GaussRule& g = cell_rule();
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < r.size(); ++i) {
        const double mid = 0.5 * (r[i] + r[i + 1]), half = 0.5 * (r[i + 1] - r[i]);
        double acc = 0.0;
        for (std::size_t q = 0; q < g.x.size(); ++q) acc += g.w[q] * f(mid + half * g.x[q], i);
        total += half * acc;
    }
    return total;
}

} // namespace quad
} // namespace logtm

#endif
