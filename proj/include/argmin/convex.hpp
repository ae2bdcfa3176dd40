#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "argmin/grid_function.hpp"
#include "argmin/lp.hpp"
#include "argmin/util.hpp"

namespace argmin {

struct OneSidedDerivatives {
    double left;
    double right;
    double at;
};

struct ConvexityViolation {
    Vec a, m, b;
    double excess;  // f(m) - (f(a)+f(b))/2, above tolerance
};

enum class GrowthClass { superlinear, sublinear, inconclusive };

namespace detail {

// Lower convex hull of (x, y) points sorted by x; monotone chain.
inline std::vector<std::size_t> lower_hull_1d(const std::vector<double>& x,
                                              const std::vector<double>& y) {
    std::vector<std::size_t> hull;
    for (std::size_t i = 0; i < x.size(); ++i) {
        while (hull.size() >= 2) {
            const std::size_t a = hull[hull.size() - 2], b = hull[hull.size() - 1];
            // Keep b only if it lies strictly below chord a--i.
            const double cross = (x[b] - x[a]) * (y[i] - y[a]) - (y[b] - y[a]) * (x[i] - x[a]);
            if (cross > 0.0) break;
            hull.pop_back();
        }
        hull.push_back(i);
    }
    return hull;
}

}  // namespace detail

/// Greatest convex minorant at grid resolution: the lower convex envelope of
/// the finite epigraph points, evaluated at every grid node. Nodes outside the
/// convex hull of the finite nodes stay +inf.
inline GridFunction gcm(const GridFunction& f) {
    const GridDomain& g = f.domain();
    std::vector<double> out(g.size(), kInf);
    if (g.dim() == 1) {
        std::vector<double> xs, ys;
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (std::isfinite(f[i])) {
                xs.push_back(g.axis(0)[i]);
                ys.push_back(f[i]);
                idx.push_back(i);
            }
        }
        const auto hull = detail::lower_hull_1d(xs, ys);
        // Piecewise-linear interpolation of the hull at every node in range.
        std::size_t seg = 0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double u = g.axis(0)[i];
            if (u < xs.front() || u > xs.back()) continue;
            while (seg + 1 < hull.size() && xs[hull[seg + 1]] < u) ++seg;
            if (seg + 1 == hull.size()) {
                out[i] = ys[hull[seg]];
                continue;
            }
            const double x0 = xs[hull[seg]], x1 = xs[hull[seg + 1]];
            const double y0 = ys[hull[seg]], y1 = ys[hull[seg + 1]];
            out[i] = (x1 == x0) ? std::min(y0, y1) : y0 + (y1 - y0) * (u - x0) / (x1 - x0);
        }
        return GridFunction(g, std::move(out));
    }

    // p >= 2: GCM(f)(u) = min sum_j lambda_j f(u_j) over convex combinations
    // of finite nodes hitting u; one small LP per query node.
    std::vector<std::size_t> fin;
    for (std::size_t i = 0; i < g.size(); ++i)
        if (std::isfinite(f[i])) fin.push_back(i);
    const std::size_t p = g.dim(), n = fin.size();
    std::vector<std::vector<double>> A(p + 1, std::vector<double>(n));
    std::vector<double> c(n);
    for (std::size_t j = 0; j < n; ++j) {
        const Vec u = g.node(fin[j]);
        for (std::size_t d = 0; d < p; ++d) A[d][j] = u[d];
        A[p][j] = 1.0;
        c[j] = f[fin[j]];
    }
    for (std::size_t i = 0; i < g.size(); ++i) {
        const Vec u = g.node(i);
        std::vector<double> b(p + 1, 1.0);
        for (std::size_t d = 0; d < p; ++d) b[d] = u[d];
        const LpResult r = SimplexLp::solve(A, b, c);
        if (r.status == LpStatus::optimal) out[i] = std::min(r.objective, f[i]);
    }
    return GridFunction(g, std::move(out));
}

/// Discrete midpoint convexity test: every node pair (a, b) whose midpoint is
/// a grid node must satisfy f(m) <= (f(a)+f(b))/2 up to a relative tolerance.
/// Returns the worst violating triple, or nullopt if convex.
inline std::optional<ConvexityViolation> convexity_violation(const GridFunction& f) {
    const GridDomain& g = f.domain();
    std::optional<ConvexityViolation> worst;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const Vec a = g.node(i);
        for (std::size_t j = i + 1; j < g.size(); ++j) {
            const double fa = f[i], fb = f[j];
            if (fa == kInf || fb == kInf) continue;  // chord is +inf, nothing to violate
            const Vec b = g.node(j);
            Vec m(a.size());
            for (std::size_t d = 0; d < a.size(); ++d) m[d] = 0.5 * (a[d] + b[d]);
            if (!g.has_node(m)) continue;
            const double fm = f[g.index_of(m)];
            const double tol = 1e-9 * (1.0 + std::abs(fa) + std::abs(fb));
            // A +inf midpoint between finite endpoints breaks epigraph convexity too.
            const double excess = (fm == kInf) ? kInf : fm - 0.5 * (fa + fb) - tol;
            if (excess > 0.0 && (!worst || excess > worst->excess))
                worst = ConvexityViolation{a, m, b, excess};
        }
    }
    return worst;
}

inline bool is_discretely_convex(const GridFunction& f) {
    return !convexity_violation(f).has_value();
}

/// Legendre-Fenchel conjugate at grid resolution:
/// f*(y) = max over finite nodes x of <y,x> - f(x).
inline GridFunction conjugate(const GridFunction& f, const GridDomain& dual_grid) {
    const GridDomain& g = f.domain();
    if (g.dim() != dual_grid.dim())
        throw std::invalid_argument("conjugate: dual grid dimension mismatch");
    std::vector<Vec> nodes(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) nodes[i] = g.node(i);
    std::vector<double> out(dual_grid.size());
    for (std::size_t k = 0; k < dual_grid.size(); ++k) {
        const Vec y = dual_grid.node(k);
        double best = -kInf;
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (f[i] == kInf) continue;
            best = std::max(best, dot(y, nodes[i]) - f[i]);
        }
        out[k] = best;
    }
    return GridFunction(dual_grid, std::move(out));
}

/// Left/right difference quotients at a grid node of a (checked) convex 1-D
/// grid function; +-inf where the neighbor value is +inf.
inline OneSidedDerivatives one_sided_derivs(const GridFunction& f, double x) {
    if (f.dim() != 1) throw std::invalid_argument("one_sided_derivs: 1-D only");
    if (auto v = convexity_violation(f)) {
        throw std::invalid_argument(
            "one_sided_derivs: input not convex; violating triple at a=" +
            format_double(v->a[0]) + " m=" + format_double(v->m[0]) +
            " b=" + format_double(v->b[0]));
    }
    const auto& ax = f.domain().axis(0);
    const std::size_t i = f.domain().index_of({x});
    if (f[i] == kInf)
        throw std::invalid_argument("one_sided_derivs: f is +inf at x");
    bool any_finite_neighbor = false;
    double left = -kInf, right = kInf;
    if (i > 0) {
        left = (f[i - 1] == kInf) ? -kInf : (f[i] - f[i - 1]) / (ax[i] - ax[i - 1]);
        any_finite_neighbor = any_finite_neighbor || f[i - 1] != kInf;
    }
    if (i + 1 < ax.size()) {
        right = (f[i + 1] == kInf) ? kInf : (f[i + 1] - f[i]) / (ax[i + 1] - ax[i]);
        any_finite_neighbor = any_finite_neighbor || f[i + 1] != kInf;
    }
    if (!any_finite_neighbor)
        throw std::invalid_argument("one_sided_derivs: no finite neighbor at x");
    return {left, right, ax[i]};
}

/// Heuristic growth diagnostic from the two outermost grid shells: compares
/// mean f(u)/||u|| there. Growth at infinity is not decidable from a finite
/// grid, so this never gates anything.
inline GrowthClass growth_class(const GridFunction& f, double superlinear_threshold = 2.0) {
    const GridDomain& g = f.domain();
    double ratio[2] = {0.0, 0.0};
    std::size_t count[2] = {0, 0};
    for (int shell = 0; shell < 2; ++shell) {
        for (std::size_t i = 0; i < g.size(); ++i) {
            // Shell = smallest distance of any axis index to its axis end.
            std::size_t min_edge_dist = g.size();
            {
                std::size_t rem = i;
                for (std::size_t d = 0; d < g.dim(); ++d) {
                    std::size_t stride = 1;
                    for (std::size_t e = d + 1; e < g.dim(); ++e) stride *= g.axis(e).size();
                    const std::size_t idx = (rem / stride) % g.axis(d).size();
                    min_edge_dist = std::min(min_edge_dist,
                                             std::min(idx, g.axis(d).size() - 1 - idx));
                }
            }
            if (min_edge_dist != static_cast<std::size_t>(shell)) continue;
            const Vec u = g.node(i);
            const double nu = norm2(u);
            if (nu == 0.0) continue;
            if (f[i] == kInf) continue;
            ratio[shell] += f[i] / nu;
            ++count[shell];
        }
        if (count[shell] == 0)
            throw std::invalid_argument("growth_class: no finite value on an outer shell");
        ratio[shell] /= static_cast<double>(count[shell]);
    }
    const double outer = ratio[0], inner = ratio[1];
    const bool increasing = outer > inner + 1e-9 * (1.0 + std::abs(inner));
    if (increasing && outer >= superlinear_threshold) return GrowthClass::superlinear;
    if (!increasing) return GrowthClass::sublinear;
    return GrowthClass::inconclusive;
}

}  // namespace argmin
