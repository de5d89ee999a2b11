#ifndef LOGTM_RANDOM_HPP
#define LOGTM_RANDOM_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "logtm/dimension.hpp"
#include "logtm/norms.hpp"
#include "logtm/profile.hpp"

namespace logtm {

/// Deterministic uniform doubles from mt19937_64; the bit-to-double mapping is
/// fixed here so streams are reproducible across standard libraries.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    std::uint64_t bits() { return eng_(); }

  private:
    std::mt19937_64 eng_;
};

/// Nonnegative step profile: k random levels on k random subintervals,
/// sampled at the nodes (steep linear transitions at the breakpoints).
inline RadialProfile random_step_profile(GridPtr grid, Rng& rng, std::size_t k = 8) {
    const double R = grid->radius();
    std::vector<double> breaks(k + 1);
    breaks.front() = 0.0;
    breaks.back() = R;
    for (std::size_t i = 1; i < k; ++i) breaks[i] = rng.uniform(0.0, R);
    std::sort(breaks.begin(), breaks.end());
    std::vector<double> levels(k);
    for (double& l : levels) l = rng.uniform();
    std::vector<double> vals(grid->size());
    for (std::size_t j = 0; j < vals.size(); ++j) {
        const double r = (*grid)[j];
        std::size_t s = 0;
        while (s + 1 < k && r >= breaks[s + 1]) ++s;
        vals[j] = levels[s];
    }
    return RadialProfile(std::move(grid), std::move(vals));
}

/// Smooth nonnegative bump mixture vanishing at the outer radius; the stock
/// non-monotone input for symmetrization checks.
inline RadialProfile random_bump_profile(GridPtr grid, Rng& rng, std::size_t bumps = 4) {
    const double R = grid->radius();
    std::vector<double> a(bumps), c(bumps), s(bumps);
    for (std::size_t b = 0; b < bumps; ++b) {
        a[b] = rng.uniform(0.2, 1.0);
        c[b] = rng.uniform(0.0, R);
        s[b] = rng.uniform(0.05, 0.3) * R;
    }
    std::vector<double> vals(grid->size());
    for (std::size_t j = 0; j < vals.size(); ++j) {
        const double r = (*grid)[j];
        double v = 0.0;
        for (std::size_t b = 0; b < bumps; ++b) {
            const double d = (r - c[b]) / s[b];
            v += a[b] * std::exp(-d * d);
        }
        vals[j] = v * (1.0 - (r / R) * (r / R));
    }
    return RadialProfile(std::move(grid), std::move(vals));
}

/// Random nonincreasing nonnegative profile with constraint norm scale (< 1
/// when scale < 1): cumulative random decrements, vanishing at the radius.
inline RadialProfile random_feasible_profile(GridPtr grid, Rng& rng, NormKind kind,
                                             const DimensionParams& p, double scale = 0.9) {
    std::vector<double> vals(grid->size());
    double v = 1.0;
    for (std::size_t j = 0; j < vals.size(); ++j) {
        vals[j] = v;
        v -= rng.uniform() * v * 0.2;
    }
    const double floor = vals.back();
    const double R = grid->radius();
    for (std::size_t j = 0; j < vals.size(); ++j)
        vals[j] = std::max(0.0, vals[j] - floor * (*grid)[j] / R);
    vals.back() = 0.0;
    RadialProfile u(std::move(grid), std::move(vals));
    const double nrm = constraint_norm(u, kind, p);
    return (nrm > 0.0) ? u.scaled(scale / nrm) : u;
}

} // namespace logtm

#endif
