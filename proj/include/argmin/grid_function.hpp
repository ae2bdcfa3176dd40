#pragma once

#include <cmath>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "argmin/grid.hpp"
#include "argmin/util.hpp"

namespace argmin {

/// Extended-real function tabulated on a GridDomain. +inf encodes indicator
/// values exactly; -inf and NaN are rejected, and at least one value must be
/// finite (properness).
class GridFunction {
  public:
    GridFunction(GridDomain domain, std::vector<double> values)
        : domain_(std::move(domain)), values_(std::move(values)) {
        if (values_.size() != domain_.size())
            throw std::invalid_argument("GridFunction: value count does not match grid");
        bool any_finite = false;
        for (double v : values_) {
            if (std::isnan(v)) throw std::invalid_argument("GridFunction: NaN value");
            if (v == -kInf) throw std::invalid_argument("GridFunction: -inf value");
            if (std::isfinite(v)) any_finite = true;
        }
        if (!any_finite) throw std::invalid_argument("GridFunction: no finite value (not proper)");
    }

    static GridFunction tabulate(const GridDomain& domain,
                                 const std::function<double(const Vec&)>& f) {
        std::vector<double> vals(domain.size());
        for (std::size_t i = 0; i < domain.size(); ++i) vals[i] = f(domain.node(i));
        return GridFunction(domain, std::move(vals));
    }

    const GridDomain& domain() const { return domain_; }
    const std::vector<double>& values() const { return values_; }
    double operator[](std::size_t flat) const { return values_[flat]; }
    double at(const Vec& u) const { return values_[domain_.index_of(u)]; }
    std::size_t dim() const { return domain_.dim(); }
    std::size_t size() const { return values_.size(); }

    void write_csv(std::ostream& os) const {
        for (std::size_t d = 0; d < domain_.dim(); ++d) os << "u_" << (d + 1) << ",";
        os << "value\n";
        for (std::size_t i = 0; i < values_.size(); ++i) {
            const Vec u = domain_.node(i);
            for (double c : u) os << format_double(c) << ",";
            os << format_double(values_[i]) << "\n";
        }
    }

    static GridFunction read_csv(std::istream& is) {
        std::string line;
        if (!std::getline(is, line)) throw std::invalid_argument("GridFunction csv: empty input");
        std::size_t dim = 0;
        {
            std::stringstream hs(line);
            std::string cell;
            while (std::getline(hs, cell, ',')) {
                if (cell.rfind("u_", 0) == 0) ++dim;
            }
        }
        if (dim == 0) throw std::invalid_argument("GridFunction csv: no coordinate columns");
        std::vector<Vec> coords;
        std::vector<double> vals;
        while (std::getline(is, line)) {
            if (line.empty()) continue;
            std::stringstream ls(line);
            std::string cell;
            Vec u(dim);
            for (std::size_t d = 0; d < dim; ++d) {
                if (!std::getline(ls, cell, ','))
                    throw std::invalid_argument("GridFunction csv: short row");
                u[d] = std::stod(cell);
            }
            if (!std::getline(ls, cell, ','))
                throw std::invalid_argument("GridFunction csv: missing value");
            vals.push_back(cell == "inf" ? kInf : std::stod(cell));
            coords.push_back(std::move(u));
        }
        // Recover per-axis node lists from the row coordinates.
        std::vector<std::vector<double>> axes(dim);
        for (std::size_t d = 0; d < dim; ++d) {
            std::vector<double> ax;
            for (const auto& u : coords) ax.push_back(u[d]);
            std::sort(ax.begin(), ax.end());
            ax.erase(std::unique(ax.begin(), ax.end()), ax.end());
            axes[d] = std::move(ax);
        }
        GridDomain domain(axes);
        if (domain.size() != coords.size())
            throw std::invalid_argument("GridFunction csv: rows do not form a full lattice");
        std::vector<double> ordered(domain.size());
        for (std::size_t i = 0; i < coords.size(); ++i)
            ordered[domain.index_of(coords[i])] = vals[i];
        return GridFunction(std::move(domain), std::move(ordered));
    }

  private:
    GridDomain domain_;
    std::vector<double> values_;
};

}  // namespace argmin
