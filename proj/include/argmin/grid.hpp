#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "argmin/util.hpp"

namespace argmin {

/// Finite rectangular lattice on which processes are sampled and argmins
/// taken. Axes are strictly increasing; the symmetric flag is computed at
/// construction (every node u has -u on the grid, with 0 present).
class GridDomain {
  public:
    explicit GridDomain(std::vector<std::vector<double>> axes) : axes_(std::move(axes)) {
        if (axes_.empty() || axes_.size() > 3)
            throw std::invalid_argument("GridDomain: dimension must be 1..3");
        size_ = 1;
        for (const auto& ax : axes_) {
            if (ax.size() < 2) throw std::invalid_argument("GridDomain: need >= 2 nodes per axis");
            for (std::size_t i = 1; i < ax.size(); ++i)
                if (!(ax[i] > ax[i - 1]))
                    throw std::invalid_argument("GridDomain: axis not strictly increasing");
            size_ *= ax.size();
        }
        strides_.assign(axes_.size(), 1);
        for (std::size_t d = axes_.size(); d-- > 1;)
            strides_[d - 1] = strides_[d] * axes_[d].size();
        symmetric_ = true;
        for (const auto& ax : axes_) {
            const std::size_t n = ax.size();
            for (std::size_t i = 0; i < n; ++i) {
                if (std::abs(ax[i] + ax[n - 1 - i]) > 1e-12 * (1.0 + std::abs(ax[i]))) {
                    symmetric_ = false;
                    break;
                }
            }
            if (symmetric_ && n % 2 == 0) symmetric_ = false;  // no 0 node
            if (!symmetric_) break;
        }
    }

    static GridDomain linspace(double lo, double hi, std::size_t n) {
        std::vector<double> ax(n);
        for (std::size_t i = 0; i < n; ++i)
            ax[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
        return GridDomain({std::move(ax)});
    }

    /// Symmetric 1-D grid: 2*half+1 nodes on [-radius, radius], 0 exactly.
    static GridDomain symmetric_1d(double radius, std::size_t half) {
        std::vector<double> ax(2 * half + 1);
        for (std::size_t i = 0; i <= 2 * half; ++i) {
            const double t = (static_cast<double>(i) - static_cast<double>(half)) /
                             static_cast<double>(half);
            ax[i] = radius * t;
        }
        ax[half] = 0.0;
        return GridDomain({std::move(ax)});
    }

    /// Symmetric p-D grid with the same axis in every dimension.
    static GridDomain symmetric_box(double radius, std::size_t half, std::size_t dim) {
        GridDomain one = symmetric_1d(radius, half);
        std::vector<std::vector<double>> axes(dim, one.axis(0));
        return GridDomain(std::move(axes));
    }

    std::size_t dim() const { return axes_.size(); }
    std::size_t size() const { return size_; }
    bool symmetric() const { return symmetric_; }
    const std::vector<double>& axis(std::size_t d) const { return axes_[d]; }

    Vec node(std::size_t flat) const {
        Vec u(axes_.size());
        for (std::size_t d = 0; d < axes_.size(); ++d) {
            const std::size_t idx = (flat / strides_[d]) % axes_[d].size();
            u[d] = axes_[d][idx];
        }
        return u;
    }

    /// Flat index of -u for node `flat`. Requires a symmetric grid.
    std::size_t reflect(std::size_t flat) const {
        if (!symmetric_) throw std::logic_error("GridDomain::reflect: grid not symmetric");
        std::size_t out = 0;
        for (std::size_t d = 0; d < axes_.size(); ++d) {
            const std::size_t idx = (flat / strides_[d]) % axes_[d].size();
            out += (axes_[d].size() - 1 - idx) * strides_[d];
        }
        return out;
    }

    bool on_boundary(std::size_t flat) const {
        for (std::size_t d = 0; d < axes_.size(); ++d) {
            const std::size_t idx = (flat / strides_[d]) % axes_[d].size();
            if (idx == 0 || idx + 1 == axes_[d].size()) return true;
        }
        return false;
    }

    /// Index of the node nearest to `u` along each axis; throws if any
    /// coordinate is farther than `tol` from its nearest axis node.
    std::size_t index_of(const Vec& u, double tol = 1e-9) const {
        if (u.size() != axes_.size()) throw std::invalid_argument("index_of: dimension mismatch");
        std::size_t flat = 0;
        for (std::size_t d = 0; d < axes_.size(); ++d) {
            const auto& ax = axes_[d];
            auto it = std::lower_bound(ax.begin(), ax.end(), u[d]);
            std::size_t idx = static_cast<std::size_t>(it - ax.begin());
            if (idx == ax.size() || (idx > 0 && u[d] - ax[idx - 1] < ax[idx] - u[d])) --idx;
            if (std::abs(ax[idx] - u[d]) > tol * (1.0 + std::abs(u[d])))
                throw std::invalid_argument("index_of: point is not a grid node");
            flat += idx * strides_[d];
        }
        return flat;
    }

    bool has_node(const Vec& u, double tol = 1e-9) const {
        try {
            (void)index_of(u, tol);
            return true;
        } catch (const std::invalid_argument&) {
            return false;
        }
    }

    double max_radius() const {
        double r2 = 0.0;
        for (const auto& ax : axes_) {
            const double m = std::max(std::abs(ax.front()), std::abs(ax.back()));
            r2 += m * m;
        }
        return std::sqrt(r2);
    }

  private:
    std::vector<std::vector<double>> axes_;
    std::vector<std::size_t> strides_;
    std::size_t size_ = 0;
    bool symmetric_ = false;
};

}  // namespace argmin
