#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "argmin/grid_function.hpp"
#include "argmin/rng.hpp"
#include "argmin/util.hpp"

namespace argmin {

struct LinearRow {
    Vec a;
    double b;
};

/// {theta : <a_j,theta> <= b_j (ineq), <a_j,theta> = b_j (eq)}.
class PolyhedralSet {
  public:
    PolyhedralSet(std::size_t dim, std::vector<LinearRow> ineq, std::vector<LinearRow> eq)
        : dim_(dim), ineq_(std::move(ineq)), eq_(std::move(eq)) {
        for (const auto* rows : {&ineq_, &eq_}) {
            for (const auto& r : *rows) {
                if (r.a.size() != dim_)
                    throw std::invalid_argument("PolyhedralSet: row dimension mismatch");
                if (norm2(r.a) == 0.0)
                    throw std::invalid_argument("PolyhedralSet: zero normal vector");
            }
        }
    }

    std::size_t dim() const { return dim_; }
    const std::vector<LinearRow>& ineq() const { return ineq_; }
    const std::vector<LinearRow>& eq() const { return eq_; }

    std::vector<std::string> violations(const Vec& x, double tol) const {
        std::vector<std::string> out;
        for (std::size_t j = 0; j < ineq_.size(); ++j)
            if (dot(ineq_[j].a, x) - ineq_[j].b > tol)
                out.push_back("ineq row " + std::to_string(j));
        for (std::size_t j = 0; j < eq_.size(); ++j)
            if (std::abs(dot(eq_[j].a, x) - eq_[j].b) > tol)
                out.push_back("eq row " + std::to_string(j));
        return out;
    }

    bool contains(const Vec& x, double tol) const { return violations(x, tol).empty(); }

    double default_tol() const {
        double bmax = 0.0;
        for (const auto& r : ineq_) bmax = std::max(bmax, std::abs(r.b));
        for (const auto& r : eq_) bmax = std::max(bmax, std::abs(r.b));
        return 1e-9 * (1.0 + bmax);
    }

    /// Exact Euclidean projection by active-set enumeration (p <= 3, few rows):
    /// every subset of inequality rows is tried as an equality block.
    Vec project(const Vec& x) const {
        if (ineq_.size() > 20)
            throw std::invalid_argument("PolyhedralSet::project: too many inequality rows");
        const double tol = default_tol() + 1e-9 * (1.0 + norm2(x));
        std::optional<Vec> best;
        double best_d2 = kInf;
        const std::size_t nsub = std::size_t{1} << ineq_.size();
        for (std::size_t mask = 0; mask < nsub; ++mask) {
            std::vector<const LinearRow*> act;
            for (std::size_t j = 0; j < ineq_.size(); ++j)
                if (mask & (std::size_t{1} << j)) act.push_back(&ineq_[j]);
            for (const auto& r : eq_) act.push_back(&r);
            Vec cand(x);
            if (!act.empty()) {
                // min ||z - x||^2 s.t. A z = b  =>  z = x + A^T (A A^T)^+ (b - A x)
                Eigen::MatrixXd A(act.size(), dim_);
                Eigen::VectorXd rhs(act.size());
                for (std::size_t i = 0; i < act.size(); ++i) {
                    for (std::size_t d = 0; d < dim_; ++d) A(i, d) = act[i]->a[d];
                    rhs(i) = act[i]->b - dot(act[i]->a, x);
                }
                // Min-norm solution of A dz = rhs is the step onto the affine block.
                Eigen::VectorXd dz = A.completeOrthogonalDecomposition().solve(rhs);
                for (std::size_t d = 0; d < dim_; ++d) cand[d] = x[d] + dz(d);
            }
            if (!contains(cand, tol)) continue;
            double d2 = 0.0;
            for (std::size_t d = 0; d < dim_; ++d) d2 += (cand[d] - x[d]) * (cand[d] - x[d]);
            if (d2 < best_d2) {
                best_d2 = d2;
                best = cand;
            }
        }
        if (!best) throw std::invalid_argument("PolyhedralSet::project: set is empty");
        return *best;
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["dim"] = dim_;
        j["ineq"] = nlohmann::json::array();
        j["eq"] = nlohmann::json::array();
        for (const auto& r : ineq_) {
            nlohmann::json row = r.a;
            row.push_back(r.b);
            j["ineq"].push_back(row);
        }
        for (const auto& r : eq_) {
            nlohmann::json row = r.a;
            row.push_back(r.b);
            j["eq"].push_back(row);
        }
        return j;
    }

    static PolyhedralSet from_json(const nlohmann::json& j) {
        const std::size_t dim = j.at("dim").get<std::size_t>();
        auto rows = [&](const char* key) {
            std::vector<LinearRow> out;
            for (const auto& row : j.value(key, nlohmann::json::array())) {
                if (row.size() != dim + 1)
                    throw std::invalid_argument("PolyhedralSet json: bad row length");
                LinearRow r;
                for (std::size_t d = 0; d < dim; ++d) r.a.push_back(row[d].get<double>());
                r.b = row[dim].get<double>();
                out.push_back(std::move(r));
            }
            return out;
        };
        return PolyhedralSet(dim, rows("ineq"), rows("eq"));
    }

  private:
    std::size_t dim_;
    std::vector<LinearRow> ineq_;
    std::vector<LinearRow> eq_;
};

/// {v : <a_j,v> <= 0 for inequality normals, <a_j,v> = 0 for equality normals}.
class PolyhedralCone {
  public:
    PolyhedralCone(std::size_t dim, std::vector<Vec> ineq_normals, std::vector<Vec> eq_normals)
        : dim_(dim), ineq_(std::move(ineq_normals)), eq_(std::move(eq_normals)) {
        for (const auto* rows : {&ineq_, &eq_})
            for (const auto& a : *rows)
                if (a.size() != dim_)
                    throw std::invalid_argument("PolyhedralCone: normal dimension mismatch");
    }

    static PolyhedralCone full_space(std::size_t dim) { return PolyhedralCone(dim, {}, {}); }
    static PolyhedralCone half_line_nonneg() { return PolyhedralCone(1, {{-1.0}}, {}); }

    std::size_t dim() const { return dim_; }
    const std::vector<Vec>& ineq_normals() const { return ineq_; }
    const std::vector<Vec>& eq_normals() const { return eq_; }
    bool unconstrained() const { return ineq_.empty() && eq_.empty(); }

    bool contains(const Vec& v, double tol_scale = 1e-12) const {
        for (const auto& a : ineq_)
            if (dot(a, v) > tol_scale * (1.0 + norm2(a) * norm2(v))) return false;
        for (const auto& a : eq_)
            if (std::abs(dot(a, v)) > tol_scale * (1.0 + norm2(a) * norm2(v))) return false;
        return true;
    }

    PolyhedralSet as_set() const {
        std::vector<LinearRow> iq, eqr;
        for (const auto& a : ineq_) iq.push_back({a, 0.0});
        for (const auto& a : eq_) eqr.push_back({a, 0.0});
        return PolyhedralSet(dim_, std::move(iq), std::move(eqr));
    }

    nlohmann::json to_json() const {
        return nlohmann::json{{"dim", dim_}, {"ineq", ineq_}, {"eq", eq_}};
    }

    static PolyhedralCone from_json(const nlohmann::json& j) {
        return PolyhedralCone(j.at("dim").get<std::size_t>(),
                              j.value("ineq", std::vector<Vec>{}),
                              j.value("eq", std::vector<Vec>{}));
    }

  private:
    std::size_t dim_;
    std::vector<Vec> ineq_;
    std::vector<Vec> eq_;
};

/// Contingent cone of a polyhedral set at a feasible point: active inequality
/// rows plus all equality rows (linear sets are tangentially regular, so this
/// is the whole story). Interior point => full space.
inline PolyhedralCone tangent_cone(const PolyhedralSet& set, const Vec& point, double tol) {
    const auto viol = set.violations(point, tol);
    if (!viol.empty()) {
        std::string msg = "tangent_cone: point violates";
        for (const auto& v : viol) msg += " " + v;
        throw std::invalid_argument(msg);
    }
    std::vector<Vec> ineq, eq;
    for (const auto& r : set.ineq())
        if (std::abs(dot(r.a, point) - r.b) <= tol) ineq.push_back(r.a);
    for (const auto& r : set.eq()) eq.push_back(r.a);
    return PolyhedralCone(set.dim(), std::move(ineq), std::move(eq));
}

inline PolyhedralCone tangent_cone(const PolyhedralSet& set, const Vec& point) {
    return tangent_cone(set, point, set.default_tol());
}

namespace detail {

// Vertices of {cone constraints} intersected with [-1,1]^p, by enumerating
// p-subsets of the bounding hyperplanes. p <= 3 and few rows, so this is exact
// and cheap.
inline std::vector<Vec> cone_box_vertices(const PolyhedralCone& cone) {
    const std::size_t p = cone.dim();
    struct Plane {
        Vec a;
        double b;
    };
    std::vector<Plane> planes;
    for (const auto& a : cone.ineq_normals()) planes.push_back({a, 0.0});
    for (const auto& a : cone.eq_normals()) planes.push_back({a, 0.0});
    for (std::size_t d = 0; d < p; ++d) {
        Vec e(p, 0.0);
        e[d] = 1.0;
        planes.push_back({e, 1.0});
        planes.push_back({scaled(e, -1.0), 1.0});
    }
    std::vector<Vec> verts;
    std::vector<std::size_t> pick(p);
    const std::size_t n = planes.size();
    auto feasible = [&](const Vec& v) {
        if (norm_inf(v) > 1.0 + 1e-9) return false;
        return cone.contains(v, 1e-9);
    };
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t k) {
        if (k == p) {
            Eigen::MatrixXd A(p, p);
            Eigen::VectorXd b(p);
            for (std::size_t i = 0; i < p; ++i) {
                for (std::size_t d = 0; d < p; ++d) A(i, d) = planes[pick[i]].a[d];
                b(i) = planes[pick[i]].b;
            }
            Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
            if (!lu.isInvertible()) return;
            Eigen::VectorXd x = lu.solve(b);
            Vec v(p);
            for (std::size_t d = 0; d < p; ++d) v[d] = x(d);
            if (feasible(v)) verts.push_back(std::move(v));
            return;
        }
        for (std::size_t i = start; i < n; ++i) {
            pick[k] = i;
            rec(i + 1, k + 1);
        }
    };
    rec(0, 0);
    verts.push_back(Vec(p, 0.0));  // origin is always in the cone
    return verts;
}

}  // namespace detail

/// Exact symmetry test for a polyhedral cone: the cone equals its negation iff
/// every inequality normal a_j also satisfies <a_j, v> >= 0 throughout the
/// cone, i.e. min <a_j, v> over cone n [-1,1]^p is 0. The minimum is taken
/// over the vertices of that polytope. A probe-sampling cross-check runs on
/// top; it can only confirm the exact verdict.
inline bool is_symmetric(const PolyhedralCone& cone, int n_probe = 64,
                         std::uint64_t seed = 0x5ca1ab1e) {
    bool sym = true;
    if (!cone.ineq_normals().empty()) {
        const auto verts = detail::cone_box_vertices(cone);
        for (const auto& a : cone.ineq_normals()) {
            double mn = 0.0;
            for (const auto& v : verts) mn = std::min(mn, dot(a, v));
            if (mn < -1e-9 * (1.0 + norm2(a))) {
                sym = false;
                break;
            }
        }
    }
    // Cross-check: project random box points onto the cone and test -v.
    Rng rng(seed);
    const auto set = cone.as_set();
    for (int k = 0; k < n_probe; ++k) {
        Vec x(cone.dim());
        for (auto& c : x) c = rng.uniform(-1.0, 1.0);
        Vec v = set.project(x);
        if (sym && !cone.contains(negate(v), 1e-7))
            throw std::logic_error("is_symmetric: probe contradicts exact verdict");
    }
    return sym;
}

/// 0 on the cone, +inf off it.
inline GridFunction indicator(const PolyhedralCone& cone, const GridDomain& grid) {
    if (grid.dim() != cone.dim())
        throw std::invalid_argument("indicator: grid/cone dimension mismatch");
    std::vector<double> vals(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        vals[i] = cone.contains(grid.node(i)) ? 0.0 : kInf;
    return GridFunction(grid, std::move(vals));
}

/// Documented fixture, not computed: Theta = {|t1| = |t2|} at the origin has
/// contingent = intermediate = Theta itself while the Clarke cone collapses
/// to {0}. Downstream code must not assume tangential regularity.
struct AbsEqualAbsCatalogEntry {
    static bool in_contingent(const Vec& v) {
        return v.size() == 2 && std::abs(std::abs(v[0]) - std::abs(v[1])) < 1e-12;
    }
    static bool in_intermediate(const Vec& v) { return in_contingent(v); }
    static bool in_clarke(const Vec& v) {
        return v.size() == 2 && std::abs(v[0]) < 1e-12 && std::abs(v[1]) < 1e-12;
    }
    static constexpr bool tangentially_regular = false;
    static constexpr bool derivable = true;
};

}  // namespace argmin
