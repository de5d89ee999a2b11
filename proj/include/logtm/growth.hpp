#ifndef LOGTM_GROWTH_HPP
#define LOGTM_GROWTH_HPP

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "logtm/dimension.hpp"

namespace logtm {

/// Evaluating G at an argument whose exponential factor exceeds the floating
/// range saturates with this error instead of returning infinity.
class GrowthSaturationError : public std::runtime_error {
  public:
    explicit GrowthSaturationError(double s)
        : std::runtime_error("growth evaluation saturated at s = " + std::to_string(s)), s_(s) {}
    double offending_argument() const { return s_; }

  private:
    double s_;
};

enum class GrowthFamily { ball_critical, space_critical, subcritical, tabulated };

struct GrowthValue {
    double G;
    double g; // G'
};

/// A concrete nonlinearity family G with g = G'. G is even, g odd.
///
/// ball_critical:  G(s) = c (1+|s|)^beta exp(alpha_N |s|^q),  q = N/(N-1)
/// space_critical: G(s) = c (1+|s|)^beta (exp(alpha_N |s|^q) - 1)
/// subcritical:    G(s) = c (exp(alpha |s|^q) - 1), alpha < alpha_N
///
/// Note: for beta < 0 the ball_critical family has a shallow dip near s = 0
/// (g(0) = c*beta), so it is increasing only beyond a small threshold. The
/// other families are increasing on [0, inf).
class GrowthSpec {
  public:
    GrowthFamily family;
    double beta = 0.0;
    double c = 1.0;
    double alpha = 0.0; // subcritical only
    DimensionParams dims;
    std::vector<std::pair<double, double>> samples; // tabulated only

    double q() const { return dims.q(); }

    /// ln G(s); usable far beyond the saturation range of G itself.
    double log_G(double s) const {
        const double a = std::abs(s);
        switch (family) {
        case GrowthFamily::ball_critical:
            return std::log(c) + beta * std::log1p(a) + dims.alpha_n * std::pow(a, q());
        case GrowthFamily::space_critical: {
            const double x = dims.alpha_n * std::pow(a, q());
            // ln(e^x - 1) = x + ln(1 - e^-x)
            if (a == 0.0) return -std::numeric_limits<double>::infinity();
            return std::log(c) + beta * std::log1p(a) + x + std::log1p(-std::exp(-x));
        }
        case GrowthFamily::subcritical: {
            const double x = alpha * std::pow(a, q());
            if (a == 0.0) return -std::numeric_limits<double>::infinity();
            return std::log(c) + x + std::log1p(-std::exp(-x));
        }
        case GrowthFamily::tabulated:
            return std::log(eval(s).G);
        }
        throw std::logic_error("log_G: bad family");
    }

    GrowthValue eval(double s) const {
        const double a = std::abs(s);
        const double sign = (s < 0.0) ? -1.0 : 1.0;
        const double qq = q();
        GrowthValue out{};
        switch (family) {
        case GrowthFamily::ball_critical: {
            const double x = dims.alpha_n * std::pow(a, qq);
            if (x > kMaxExponent) throw GrowthSaturationError(s);
            const double e = std::exp(x);
            out.G = c * std::pow(1.0 + a, beta) * e;
            const double dx = dims.alpha_n * qq * ((a == 0.0 && qq < 2.0) ? 0.0 : std::pow(a, qq - 1.0));
            out.g = sign * c * e * std::pow(1.0 + a, beta - 1.0) * (beta + (1.0 + a) * dx);
            break;
        }
        case GrowthFamily::space_critical: {
            const double x = dims.alpha_n * std::pow(a, qq);
            if (x > kMaxExponent) throw GrowthSaturationError(s);
            const double em1 = std::expm1(x);
            out.G = c * std::pow(1.0 + a, beta) * em1;
            const double dx = dims.alpha_n * qq * ((a == 0.0 && qq < 2.0) ? 0.0 : std::pow(a, qq - 1.0));
            out.g = sign * c * std::pow(1.0 + a, beta - 1.0) * (beta * em1 + (1.0 + a) * dx * (em1 + 1.0));
            break;
        }
        case GrowthFamily::subcritical: {
            const double x = alpha * std::pow(a, qq);
            if (x > kMaxExponent) throw GrowthSaturationError(s);
            const double em1 = std::expm1(x);
            out.G = c * em1;
            const double dx = alpha * qq * ((a == 0.0 && qq < 2.0) ? 0.0 : std::pow(a, qq - 1.0));
            out.g = sign * c * dx * (em1 + 1.0);
            break;
        }
        case GrowthFamily::tabulated: {
            if (samples.size() < 2) throw std::logic_error("tabulated growth needs >= 2 samples");
            auto it = std::lower_bound(samples.begin(), samples.end(), std::make_pair(a, 0.0));
            std::size_t i = static_cast<std::size_t>(it - samples.begin());
            if (i == 0) i = 1;
            if (i >= samples.size()) i = samples.size() - 1;
            const auto& [s0, g0] = samples[i - 1];
            const auto& [s1, g1] = samples[i];
            const double slope = (g1 - g0) / (s1 - s0);
            out.G = g0 + slope * (a - s0);
            out.g = sign * slope;
            break;
        }
        }
        return out;
    }

    static constexpr double kMaxExponent = 700.0;
};

inline GrowthValue growth_eval(const GrowthSpec& spec, double s) { return spec.eval(s); }

inline GrowthSpec make_ball_critical(double beta, double c, const DimensionParams& p) {
    if (beta > 0.0) throw std::invalid_argument("ball_critical: beta must be <= 0");
    if (!(c > 0.0)) throw std::invalid_argument("ball_critical: c must be positive");
    GrowthSpec s;
    s.family = GrowthFamily::ball_critical;
    s.beta = beta;
    s.c = c;
    s.dims = p;
    return s;
}

inline GrowthSpec make_space_critical(double beta, double c, const DimensionParams& p) {
    if (beta > 0.0) throw std::invalid_argument("space_critical: beta must be <= 0");
    if (std::abs(beta) > p.n / static_cast<double>(p.n - 1))
        throw std::invalid_argument("space_critical: |beta| must be <= N/(N-1) for monotonicity");
    if (!(c > 0.0)) throw std::invalid_argument("space_critical: c must be positive");
    GrowthSpec s;
    s.family = GrowthFamily::space_critical;
    s.beta = beta;
    s.c = c;
    s.dims = p;
    return s;
}

inline GrowthSpec make_subcritical(double alpha, double c, const DimensionParams& p) {
    if (!(alpha < p.alpha_n) || !(alpha > 0.0))
        throw std::invalid_argument("subcritical: need 0 < alpha < alpha_N");
    if (!(c > 0.0)) throw std::invalid_argument("subcritical: c must be positive");
    GrowthSpec s;
    s.family = GrowthFamily::subcritical;
    s.alpha = alpha;
    s.c = c;
    s.dims = p;
    return s;
}

inline GrowthSpec make_tabulated(std::vector<std::pair<double, double>> samples, const DimensionParams& p) {
    if (samples.size() < 2) throw std::invalid_argument("tabulated: need >= 2 samples");
    std::sort(samples.begin(), samples.end());
    GrowthSpec s;
    s.family = GrowthFamily::tabulated;
    s.dims = p;
    s.samples = std::move(samples);
    return s;
}

enum class GrowthClassKind { at_most, at_least };

struct GrowthClassReport {
    bool holds = false;
    double witness_constant = 0.0;
    double worst_s = 0.0;
};

/// For at_most: the smallest C with G(s) <= C e^{alpha_N |s|^q} (1+|s|)^beta
/// over a log grid of s. For at_least: the largest c' with
/// G(s) >= c' s^beta e^{alpha_N |s|^q} for s >= s0.
inline GrowthClassReport check_growth_class(const GrowthSpec& spec, double beta, GrowthClassKind kind,
                                            double s0 = 1.0, std::size_t samples = 2000) {
    const DimensionParams& p = spec.dims;
    const double qq = spec.q();
    const double s_lo = (kind == GrowthClassKind::at_most) ? 1e-3 : s0;
    // stay clear of double overflow in the envelope
    const double s_hi = std::pow(0.9 * GrowthSpec::kMaxExponent / p.alpha_n, 1.0 / qq);
    GrowthClassReport rep;
    bool first = true;
    for (std::size_t k = 0; k < samples; ++k) {
        const double t = static_cast<double>(k) / (samples - 1);
        const double s = s_lo * std::pow(s_hi / s_lo, t);
        const double log_env = p.alpha_n * std::pow(s, qq) +
                               ((kind == GrowthClassKind::at_most) ? beta * std::log1p(s)
                                                                   : beta * std::log(s));
        const double ratio = std::exp(spec.log_G(s) - log_env);
        if (kind == GrowthClassKind::at_most) {
            if (first || ratio > rep.witness_constant) {
                rep.witness_constant = ratio;
                rep.worst_s = s;
            }
        } else {
            if (first || ratio < rep.witness_constant) {
                rep.witness_constant = ratio;
                rep.worst_s = s;
            }
        }
        first = false;
    }
    rep.holds = std::isfinite(rep.witness_constant) && rep.witness_constant > 0.0;
    return rep;
}

/// The increasing majorant used on the whole space:
/// (c/alpha_N)(1 + alpha_N |s|^q)^{beta (N-1)/N} e^{alpha_N |s|^q}.
inline double tilde_g_space(double beta, double c, const DimensionParams& p, double s) {
    const double nn = p.n;
    if (!(beta > -nn / (nn - 1.0)) || !(beta < -nn / (2.0 * (nn - 1.0))))
        throw std::domain_error("tilde_g_space: beta out of (-N/(N-1), -N/(2(N-1)))");
    const double x = p.alpha_n * std::pow(std::abs(s), p.n / (nn - 1.0));
    if (x > GrowthSpec::kMaxExponent) throw GrowthSaturationError(s);
    return (c / p.alpha_n) * std::pow(1.0 + x, beta * (nn - 1.0) / nn) * std::exp(x);
}

/// Measured small-s constant: the least C with G(s) <= C s^pow on (0, s_max].
inline double small_s_constant(const GrowthSpec& spec, double pow_exp, double s_max = 1.0) {
    if (!(s_max > 0.0)) throw std::invalid_argument("small_s_constant: s_max must be positive");
    double best = 0.0;
    for (int k = 0; k < 400; ++k) {
        const double s = s_max * std::pow(10.0, -6.0 + 6.0 * k / 399.0);
        const double ratio = spec.eval(s).G / std::pow(s, pow_exp);
        best = std::max(best, ratio);
    }
    return best;
}

inline std::string growth_to_kv(const GrowthSpec& s) {
    std::ostringstream os;
    os.precision(17);
    switch (s.family) {
    case GrowthFamily::ball_critical:
        os << "family=ball_critical\nbeta=" << s.beta << "\nc=" << s.c;
        break;
    case GrowthFamily::space_critical:
        os << "family=space_critical\nbeta=" << s.beta << "\nc=" << s.c;
        break;
    case GrowthFamily::subcritical:
        os << "family=subcritical\nalpha=" << s.alpha << "\nc=" << s.c;
        break;
    case GrowthFamily::tabulated:
        os << "family=tabulated";
        for (const auto& [a, b] : s.samples) os << "\nsample=" << a << ":" << b;
        break;
    }
    os << "\nn=" << s.dims.n << "\n";
    return os.str();
}

inline GrowthSpec growth_from_kv(const std::string& text) {
    std::istringstream is(text);
    std::string line, family;
    double beta = 0.0, c = 1.0, alpha = 0.0;
    int n = 0;
    std::vector<std::pair<double, double>> samples;
    while (std::getline(is, line)) {
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = line.substr(0, eq), val = line.substr(eq + 1);
        if (key == "family") family = val;
        else if (key == "beta") beta = std::stod(val);
        else if (key == "c") c = std::stod(val);
        else if (key == "alpha") alpha = std::stod(val);
        else if (key == "n") n = std::stoi(val);
        else if (key == "sample") {
            const auto colon = val.find(':');
            samples.emplace_back(std::stod(val.substr(0, colon)), std::stod(val.substr(colon + 1)));
        } else {
            throw std::invalid_argument("growth_from_kv: unknown key " + key);
        }
    }
    const DimensionParams p = dim_params(n);
    if (family == "ball_critical") return make_ball_critical(beta, c, p);
    if (family == "space_critical") return make_space_critical(beta, c, p);
    if (family == "subcritical") return make_subcritical(alpha, c, p);
    if (family == "tabulated") return make_tabulated(std::move(samples), p);
    throw std::invalid_argument("growth_from_kv: unknown family " + family);
}

} // namespace logtm

#endif
