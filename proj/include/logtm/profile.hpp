#ifndef LOGTM_PROFILE_HPP
#define LOGTM_PROFILE_HPP

#include <cmath>
#include <cstddef>
#include <functional>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "logtm/grid.hpp"

namespace logtm {

using GridPtr = std::shared_ptr<const RadialGrid>;

/// A radial function u(r), piecewise linear between grid nodes, zero outside
/// the grid's radius.
class RadialProfile {
  public:
    RadialProfile(GridPtr grid, std::vector<double> values)
        : grid_(std::move(grid)), values_(std::move(values)) {
        if (!grid_) throw std::invalid_argument("RadialProfile: null grid");
        if (values_.size() != grid_->size())
            throw std::invalid_argument("RadialProfile: value count does not match grid");
        for (double v : values_)
            if (!std::isfinite(v)) throw std::invalid_argument("RadialProfile: non-finite value");
    }

    const RadialGrid& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }

    bool same_grid(const RadialProfile& o) const {
        return grid_ == o.grid_ || *grid_ == *o.grid_;
    }

    /// Piecewise-linear evaluation; 0 beyond the last node.
    double operator()(double r) const {
        const auto& x = grid_->nodes();
        if (r <= x.front()) return values_.front();
        if (r >= x.back()) return (r == x.back()) ? values_.back() : 0.0;
        std::size_t i = grid_->cell_of(r);
        double t = (r - x[i]) / (x[i + 1] - x[i]);
        return values_[i] + t * (values_[i + 1] - values_[i]);
    }

    bool nonnegative() const {
        for (double v : values_)
            if (v < 0.0) return false;
        return true;
    }

    bool nonincreasing(double tol = 0.0) const {
        for (std::size_t i = 1; i < values_.size(); ++i)
            if (values_[i] > values_[i - 1] + tol) return false;
        return true;
    }

    RadialProfile with_values(std::vector<double> v) const { return RadialProfile(grid_, std::move(v)); }

    RadialProfile map(const std::function<double(double)>& f) const {
        std::vector<double> v(values_.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(values_[i]);
        return RadialProfile(grid_, std::move(v));
    }

    RadialProfile scaled(double lambda) const {
        std::vector<double> v(values_.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = lambda * values_[i];
        return RadialProfile(grid_, std::move(v));
    }

  private:
    GridPtr grid_;
    std::vector<double> values_;
};

inline RadialProfile zero_profile(GridPtr grid) {
    std::vector<double> v(grid->size(), 0.0);
    return RadialProfile(std::move(grid), std::move(v));
}

inline RadialProfile constant_profile(GridPtr grid, double value) {
    std::vector<double> v(grid->size(), value);
    return RadialProfile(std::move(grid), std::move(v));
}

/// Profile from a callable sampled at the nodes.
inline RadialProfile sample_profile(GridPtr grid, const std::function<double(double)>& f) {
    std::vector<double> v(grid->size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f((*grid)[i]);
    return RadialProfile(std::move(grid), std::move(v));
}

} // namespace logtm

#endif
