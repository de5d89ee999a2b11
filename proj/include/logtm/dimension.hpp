#ifndef LOGTM_DIMENSION_HPP
#define LOGTM_DIMENSION_HPP

#include <cmath>
#include <stdexcept>

namespace logtm {

/// Dimension-dependent constants used throughout: the surface measure of the
/// unit sphere, the critical exponential-growth exponent, and the radial
/// decay constant.
struct DimensionParams {
    int n;          ///< space dimension, >= 2
    double omega;   ///< surface measure of the unit (n-1)-sphere
    double alpha_n; ///< n * omega^{1/(n-1)}
    double c_n;     ///< (n/omega)^{1/n}

    /// Conjugate exponent n/(n-1), the power in the exponential growth.
    double q() const { return static_cast<double>(n) / (n - 1); }
};

namespace detail {

// Gamma(k/2) by the exact recursion from Gamma(1)=1, Gamma(1/2)=sqrt(pi).
inline double gamma_half_integer(int twice_arg) {
    if (twice_arg <= 0) throw std::invalid_argument("gamma_half_integer: argument must be positive");
    double g = (twice_arg % 2 == 0) ? 1.0 : std::sqrt(M_PI);
    for (int k = twice_arg; k > 2; k -= 2) g *= 0.5 * (k - 2);
    return g;
}

// Surface measure of the unit k-sphere S^k embedded in R^{k+1}.
inline double sphere_surface_measure(int k) {
    if (k < 0) throw std::invalid_argument("sphere_surface_measure: negative index");
    if (k == 0) return 2.0;
    return 2.0 * std::pow(M_PI, 0.5 * (k + 1)) / gamma_half_integer(k + 1);
}

} // namespace detail

inline DimensionParams dim_params(int n) {
    if (n < 2) throw std::domain_error("dim_params: dimension must be >= 2");
    DimensionParams p;
    p.n = n;
    p.omega = detail::sphere_surface_measure(n - 1);
    p.alpha_n = n * std::pow(p.omega, 1.0 / (n - 1));
    p.c_n = std::pow(n / p.omega, 1.0 / n);
    return p;
}

} // namespace logtm

#endif
