#ifndef LOGTM_GRID_HPP
#define LOGTM_GRID_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace logtm {

/// Strictly increasing radii r_0 < r_1 < ... < r_M, r_0 >= 0. Immutable.
class RadialGrid {
  public:
    explicit RadialGrid(std::vector<double> nodes) : nodes_(std::move(nodes)) {
        if (nodes_.size() < 3) throw std::invalid_argument("RadialGrid: need at least 3 nodes");
        if (nodes_.front() < 0.0) throw std::invalid_argument("RadialGrid: negative radius");
        for (std::size_t i = 1; i < nodes_.size(); ++i) {
            if (!(nodes_[i] > nodes_[i - 1]) || !std::isfinite(nodes_[i]))
                throw std::invalid_argument("RadialGrid: nodes must be finite and strictly increasing");
        }
    }

    const std::vector<double>& nodes() const { return nodes_; }
    std::size_t size() const { return nodes_.size(); }
    double operator[](std::size_t i) const { return nodes_[i]; }
    double radius() const { return nodes_.back(); }

    bool operator==(const RadialGrid& o) const { return nodes_ == o.nodes_; }

    /// Index of the cell [r_i, r_{i+1}] containing r (clamped to the range).
    std::size_t cell_of(double r) const {
        auto it = std::upper_bound(nodes_.begin(), nodes_.end(), r);
        std::size_t i = static_cast<std::size_t>(it - nodes_.begin());
        if (i == 0) return 0;
        if (i >= nodes_.size()) return nodes_.size() - 2;
        return i - 1;
    }

  private:
    std::vector<double> nodes_;
};

/// Node 0 followed by a geometric progression from R*1e-8 to R. The default
/// layout: log-spaced nodes resolve profiles concentrating at small radii.
inline RadialGrid make_geometric_grid(std::size_t m, double radius = 1.0, double r_min_factor = 1e-8) {
    if (m < 3) throw std::invalid_argument("make_geometric_grid: need m >= 3");
    if (!(radius > 0.0) || !(r_min_factor > 0.0) || !(r_min_factor < 1.0))
        throw std::invalid_argument("make_geometric_grid: bad radius or r_min_factor");
    std::vector<double> nodes;
    nodes.reserve(m + 1);
    nodes.push_back(0.0);
    const double lo = std::log(radius * r_min_factor), hi = std::log(radius);
    for (std::size_t j = 0; j < m; ++j) {
        double t = static_cast<double>(j) / (m - 1);
        nodes.push_back(std::exp(lo + t * (hi - lo)));
    }
    nodes.back() = radius;
    return RadialGrid(std::move(nodes));
}

inline RadialGrid make_uniform_grid(std::size_t m, double radius = 1.0) {
    if (m < 2) throw std::invalid_argument("make_uniform_grid: need m >= 2");
    std::vector<double> nodes(m + 1);
    for (std::size_t j = 0; j <= m; ++j) nodes[j] = radius * static_cast<double>(j) / m;
    return RadialGrid(std::move(nodes));
}

/// Geometric grid with one extra node inserted at r_insert (deduplicated).
inline RadialGrid make_geometric_grid_with_node(std::size_t m, double radius, double r_min_factor,
                                                double r_insert) {
    RadialGrid base = make_geometric_grid(m, radius, r_min_factor);
    std::vector<double> nodes = base.nodes();
    if (r_insert > 0.0 && r_insert < radius) {
        auto it = std::lower_bound(nodes.begin(), nodes.end(), r_insert);
        const double rel = 1e-12 * radius;
        if (it == nodes.end() || std::abs(*it - r_insert) > rel) nodes.insert(it, r_insert);
    }
    return RadialGrid(std::move(nodes));
}

} // namespace logtm

#endif
