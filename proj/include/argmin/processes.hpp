#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "argmin/cones.hpp"
#include "argmin/grid.hpp"
#include "argmin/rng.hpp"
#include "argmin/stats.hpp"
#include "argmin/util.hpp"

namespace argmin {

using SamplePath = std::vector<double>;  // one value per flat grid node

// ---------------------------------------------------------------------------
// Drift catalog
// ---------------------------------------------------------------------------

/// Bridge-penalty directional term; the three branches split at mu = 1.
inline double h_mu(double a, double b, double mu) {
    auto sgn = [](double t) { return (t > 0.0) - (t < 0.0); };
    if (mu > 1.0) return a * std::pow(std::abs(b), mu - 1.0) * sgn(b);
    if (mu == 1.0) return (b != 0.0) ? a * sgn(b) : std::abs(a);
    return (b == 0.0) ? std::pow(std::abs(a), mu) : 0.0;
}

class DriftSpec {
  public:
    enum class Kind { quadratic, lad_limit, bridge, example7, mode, custom };

    struct Example7Draw {
        Vec x;
        double r1;
        double r2;
    };

    static DriftSpec quadratic(std::vector<Vec> q) {
        const std::size_t p = q.size();
        DriftSpec s(Kind::quadratic, p, true);
        s.eval_ = [q = std::move(q), p](const Vec& u) {
            double acc = 0.0;
            for (std::size_t i = 0; i < p; ++i) acc += u[i] * dot(q[i], u);
            return acc;
        };
        s.check();
        return s;
    }

    static DriftSpec quadratic_identity(std::size_t dim) {
        std::vector<Vec> q(dim, Vec(dim, 0.0));
        for (std::size_t i = 0; i < dim; ++i) q[i][i] = 1.0;
        return quadratic(std::move(q));
    }

    struct LadItem {
        double weight;
        Vec x;
    };

    /// D(u) = (gamma+1)^{-1} sum_k w_k |<u, x_k>|^{gamma+1}.
    static DriftSpec lad_limit(double gamma_exp, std::vector<LadItem> items) {
        if (items.empty()) throw std::invalid_argument("lad_limit: no items");
        const std::size_t p = items[0].x.size();
        DriftSpec s(Kind::lad_limit, p, true);
        s.eval_ = [gamma_exp, items = std::move(items)](const Vec& u) {
            double acc = 0.0;
            for (const auto& it : items)
                acc += it.weight * std::pow(std::abs(dot(u, it.x)), gamma_exp + 1.0);
            return acc / (gamma_exp + 1.0);
        };
        s.check();
        return s;
    }

    /// D(u) = <u, Cu> + lambda0 * sum_j h_mu(u_j, theta0_j).
    static DriftSpec bridge(std::vector<Vec> c, double lambda0, double mu, Vec theta0) {
        const std::size_t p = c.size();
        if (theta0.size() != p) throw std::invalid_argument("bridge: theta0 dimension");
        // Signed linear terms appear when mu >= 1 and theta0 != 0; nonnegativity
        // is only asserted otherwise.
        bool nonneg = lambda0 >= 0.0;
        if (mu >= 1.0)
            for (double t : theta0)
                if (t != 0.0) nonneg = false;
        DriftSpec s(Kind::bridge, p, nonneg);
        s.eval_ = [c = std::move(c), lambda0, mu, theta0 = std::move(theta0), p](const Vec& u) {
            double acc = 0.0;
            for (std::size_t i = 0; i < p; ++i) acc += u[i] * dot(c[i], u);
            for (std::size_t j = 0; j < p; ++j) acc += lambda0 * h_mu(u[j], theta0[j], mu);
            return acc;
        };
        s.check();
        return s;
    }

    static DriftSpec bridge_1d(double c, double lambda0, double mu, double theta0) {
        return bridge({{c}}, lambda0, mu, {theta0});
    }

    /// D(u) = u^2 - c0*u*1{mu = 7/8} (spacing-based mode estimator limit).
    static DriftSpec mode(double c0, bool mu_is_seven_eighths) {
        DriftSpec s(Kind::mode, 1, !(mu_is_seven_eighths && c0 != 0.0));
        s.eval_ = [c0, mu_is_seven_eighths](const Vec& u) {
            return u[0] * u[0] - (mu_is_seven_eighths ? c0 * u[0] : 0.0);
        };
        s.check();
        return s;
    }

    /// D(u) = E[<u,X> R1] + E[(<u,X>)_+ R2], the expectation by fixed-seed MC
    /// quadrature (draws generated once and shared by all evaluations).
    static DriftSpec example7(std::function<Example7Draw(Rng&)> sampler, std::size_t dim,
                              std::size_t n_quad = 1000000, std::uint64_t quad_seed = 0xd81f7) {
        DriftSpec s(Kind::example7, dim, false);
        auto cache = std::make_shared<Example7Cache>();
        cache->sampler = std::move(sampler);
        cache->n = n_quad;
        cache->seed = quad_seed;
        s.eval_ = [cache](const Vec& u) {
            std::call_once(cache->once, [&] {
                Rng rng(cache->seed);
                cache->draws.reserve(cache->n);
                for (std::size_t i = 0; i < cache->n; ++i)
                    cache->draws.push_back(cache->sampler(rng));
            });
            double acc = 0.0;
            for (const auto& d : cache->draws) {
                const double t = dot(u, d.x);
                acc += t * d.r1 + std::max(t, 0.0) * d.r2;
            }
            return acc / static_cast<double>(cache->draws.size());
        };
        s.check();
        return s;
    }

    static DriftSpec custom(GridFunction f) {
        DriftSpec s(Kind::custom, f.dim(), false);
        auto shared = std::make_shared<GridFunction>(std::move(f));
        s.eval_ = [shared](const Vec& u) { return shared->at(u); };
        s.check();
        return s;
    }

    double operator()(const Vec& u) const { return eval_(u); }
    std::size_t dim() const { return dim_; }
    Kind kind() const { return kind_; }

    std::vector<double> on_grid(const GridDomain& grid) const {
        if (grid.dim() != dim_) throw std::invalid_argument("drift on_grid: dimension mismatch");
        std::vector<double> vals(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) {
            vals[i] = eval_(grid.node(i));
            if (nonneg_asserted_ && vals[i] < -1e-9)
                throw std::logic_error("drift: negative value where nonnegativity is asserted");
        }
        return vals;
    }

  private:
    struct Example7Cache {
        std::function<Example7Draw(Rng&)> sampler;
        std::size_t n = 0;
        std::uint64_t seed = 0;
        std::once_flag once;
        std::vector<Example7Draw> draws;
    };

    DriftSpec(Kind k, std::size_t dim, bool nonneg) : kind_(k), dim_(dim), nonneg_asserted_(nonneg) {}

    void check() const {
        const double d0 = eval_(Vec(dim_, 0.0));
        if (std::abs(d0) > 1e-9) throw std::invalid_argument("drift: D(0) != 0");
    }

    Kind kind_;
    std::size_t dim_;
    bool nonneg_asserted_;
    std::function<double(const Vec&)> eval_;
};

// ---------------------------------------------------------------------------
// Class I: S(u) = <u, Y>
// ---------------------------------------------------------------------------

struct ClassISpec {
    std::size_t dim = 1;
    std::function<Vec(Rng&)> sampler;
    bool declared_symmetric = false;
    std::string label;

    static ClassISpec gaussian(std::size_t dim, double sd, double scale = 1.0) {
        ClassISpec s;
        s.dim = dim;
        s.declared_symmetric = true;
        s.label = "gaussian(sd=" + format_double(sd) + ",scale=" + format_double(scale) + ")";
        s.sampler = [dim, sd, scale](Rng& rng) {
            Vec y(dim);
            for (auto& c : y) c = scale * rng.normal(0.0, sd);
            return y;
        };
        return s;
    }

    static ClassISpec fixed(Vec y) {
        ClassISpec s;
        s.dim = y.size();
        s.declared_symmetric = false;
        s.label = "fixed";
        s.sampler = [y = std::move(y)](Rng&) { return y; };
        return s;
    }

    /// scale * (Poisson(lambda) - lambda): mean zero, infinitely divisible,
    /// asymmetric. Coordinates IID.
    static ClassISpec centered_poisson(std::size_t dim, double lambda, double scale = 1.0) {
        ClassISpec s;
        s.dim = dim;
        s.declared_symmetric = false;
        s.label = "centered_poisson(" + format_double(lambda) + ")";
        s.sampler = [dim, lambda, scale](Rng& rng) {
            Vec y(dim);
            std::poisson_distribution<long> pois(lambda);
            for (auto& c : y) c = scale * (static_cast<double>(pois(rng.engine())) - lambda);
            return y;
        };
        return s;
    }
};

struct Class1Result {
    SamplePath path;
    Vec y;
};

inline Class1Result sample_class1_with_y(const ClassISpec& spec, const GridDomain& grid,
                                         std::uint64_t seed) {
    if (spec.dim != grid.dim()) throw std::invalid_argument("sample_class1: dimension mismatch");
    Rng rng(seed);
    Vec y = spec.sampler(rng);
    SamplePath path(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) path[i] = dot(grid.node(i), y);
    return {std::move(path), std::move(y)};
}

inline SamplePath sample_class1(const ClassISpec& spec, const GridDomain& grid,
                                std::uint64_t seed) {
    return sample_class1_with_y(spec, grid, seed).path;
}

// ---------------------------------------------------------------------------
// Class II: S = GP with covariance kernel Sigma
// ---------------------------------------------------------------------------

struct PflugAtom {
    double weight;
    double y;
    Vec s;
};

struct ClassIISpec {
    std::function<double(const Vec&, const Vec&)> kernel;
    std::string label;
    std::optional<double> pflug_gamma;
    std::vector<PflugAtom> pflug_atoms;

    /// gamma * sum_k w_k (y_k^2/2)(|<s,u>| + |<s,v>| - |<s,u-v>|).
    static ClassIISpec pflug(double gamma, std::vector<PflugAtom> atoms) {
        ClassIISpec s;
        s.pflug_gamma = gamma;
        s.pflug_atoms = atoms;
        s.label = "pflug";
        s.kernel = [gamma, atoms = std::move(atoms)](const Vec& u, const Vec& v) {
            double acc = 0.0;
            for (const auto& a : atoms) {
                Vec w(u.size());
                for (std::size_t d = 0; d < u.size(); ++d) w[d] = u[d] - v[d];
                acc += a.weight * 0.5 * a.y * a.y *
                       (std::abs(dot(a.s, u)) + std::abs(dot(a.s, v)) - std::abs(dot(a.s, w)));
            }
            return gamma * acc;
        };
        return s;
    }

    /// scale * min(|u|,|v|) 1{uv > 0}, 1-D.
    static ClassIISpec brownian_two_sided(double scale = 1.0) {
        ClassIISpec s;
        s.label = "brownian";
        s.kernel = [scale](const Vec& u, const Vec& v) {
            return (u[0] * v[0] > 0.0) ? scale * std::min(std::abs(u[0]), std::abs(v[0])) : 0.0;
        };
        return s;
    }

    static ClassIISpec custom(std::function<double(const Vec&, const Vec&)> k, std::string label) {
        ClassIISpec s;
        s.kernel = std::move(k);
        s.label = std::move(label);
        return s;
    }
};

/// Factorizes the Gram matrix of the kernel on the grid once; each sample is
/// one matrix-vector product. Factorization is by symmetric eigendecomposition
/// with negative eigenvalues floored at -1e-8 * trace (error beyond) and
/// clipped to zero, so exact-zero-variance nodes stay exact.
class Class2Sampler {
  public:
    Class2Sampler(ClassIISpec spec, GridDomain grid)
        : spec_(std::move(spec)), grid_(std::move(grid)) {
        const std::size_t n = grid_.size();
        std::vector<Vec> nodes(n);
        for (std::size_t i = 0; i < n; ++i) nodes[i] = grid_.node(i);
        Eigen::MatrixXd gram(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j)
                gram(i, j) = gram(j, i) = spec_.kernel(nodes[i], nodes[j]);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
        if (eig.info() != Eigen::Success)
            throw std::runtime_error("Class2Sampler: eigendecomposition failed");
        const double tr = std::max(gram.trace(), 0.0);
        const double floor = -1e-8 * (tr + 1e-300);
        Eigen::VectorXd lam = eig.eigenvalues();
        for (Eigen::Index k = 0; k < lam.size(); ++k) {
            if (lam(k) < floor)
                throw std::runtime_error("Class2Sampler: kernel Gram matrix is not PSD");
            lam(k) = std::sqrt(std::max(lam(k), 0.0));
        }
        factor_ = eig.eigenvectors() * lam.asDiagonal();
    }

    const GridDomain& grid() const { return grid_; }
    const ClassIISpec& spec() const { return spec_; }

    SamplePath sample(std::uint64_t seed) const {
        Rng rng(seed);
        Eigen::VectorXd z(factor_.cols());
        for (Eigen::Index k = 0; k < z.size(); ++k) z(k) = rng.normal();
        Eigen::VectorXd path = factor_ * z;
        return SamplePath(path.data(), path.data() + path.size());
    }

  private:
    ClassIISpec spec_;
    GridDomain grid_;
    Eigen::MatrixXd factor_;
};

inline SamplePath sample_class2(const ClassIISpec& spec, const GridDomain& grid,
                                std::uint64_t seed) {
    return Class2Sampler(spec, grid).sample(seed);
}

// ---------------------------------------------------------------------------
// Class III: (centered) Poisson hyperplane process
// ---------------------------------------------------------------------------

struct ClassIIISpec {
    double gamma = 1.0;
    std::function<std::pair<double, Vec>(Rng&)> nu_sampler;  // draws (V, U)
    std::size_t dim = 1;
    std::string label;
    double horizon_margin = 0.1;
    std::optional<double> horizon_override;
    bool bounded_support = true;  // caller-declared; unbounded nu is flagged approximate

    static ClassIIISpec point_mass(double gamma, double v, Vec u) {
        ClassIIISpec s;
        s.gamma = gamma;
        s.dim = u.size();
        s.label = "point_mass";
        s.nu_sampler = [v, u = std::move(u)](Rng&) { return std::make_pair(v, u); };
        return s;
    }

    /// Atoms (w_k, V_k, U_k) automatically paired with (w_k, V_k, -U_k), so
    /// nu(A, B) = nu(A, -B) by construction.
    static ClassIIISpec paired_atoms(double gamma, std::vector<std::tuple<double, double, Vec>> atoms) {
        ClassIIISpec s;
        s.gamma = gamma;
        s.dim = std::get<2>(atoms.at(0)).size();
        s.label = "paired_atoms";
        double total = 0.0;
        for (const auto& a : atoms) total += std::get<0>(a);
        s.nu_sampler = [atoms = std::move(atoms), total](Rng& rng) {
            double t = rng.uniform(0.0, total);
            for (const auto& [w, v, u] : atoms) {
                if (t < w) {
                    Vec uu = (rng.uniform() < 0.5) ? u : negate(u);
                    return std::make_pair(v, uu);
                }
                t -= w;
            }
            const auto& [w, v, u] = atoms.back();
            return std::make_pair(v, u);
        };
        return s;
    }

    static ClassIIISpec custom(double gamma, std::size_t dim,
                               std::function<std::pair<double, Vec>(Rng&)> sampler,
                               std::string label, bool bounded_support = true) {
        ClassIIISpec s;
        s.gamma = gamma;
        s.dim = dim;
        s.nu_sampler = std::move(sampler);
        s.label = std::move(label);
        s.bounded_support = bounded_support;
        return s;
    }
};

/// Simulates jump times at rate gamma up to a truncation horizon H chosen
/// from a probe of ||U||. The centering table E[Poisson(u)] is a fixed-seed
/// MC quadrature shared by every path of the sampler.
class Class3Sampler {
  public:
    static constexpr std::uint64_t kProbeSeed = 0x9e11a7u;
    static constexpr std::uint64_t kQuadSeed = 0xcafe17u;

    Class3Sampler(ClassIIISpec spec, GridDomain grid, std::size_t n_quad = 1000000)
        : spec_(std::move(spec)), grid_(std::move(grid)), n_quad_(n_quad) {
        if (spec_.gamma <= 0.0) throw std::invalid_argument("Class3Sampler: gamma must be > 0");
        if (spec_.dim != grid_.dim())
            throw std::invalid_argument("Class3Sampler: dimension mismatch");
        nodes_.resize(grid_.size());
        for (std::size_t i = 0; i < grid_.size(); ++i) nodes_[i] = grid_.node(i);
        // Probe the atom law for the 99.99% quantile of ||U||.
        Rng rng(kProbeSeed);
        const std::size_t n_probe = 100000;
        std::vector<double> norms(n_probe);
        for (std::size_t i = 0; i < n_probe; ++i) {
            auto [v, u] = spec_.nu_sampler(rng);
            if (!std::isfinite(v) || !std::isfinite(norm2(u)))
                throw std::invalid_argument("Class3Sampler: non-finite atom");
            norms[i] = norm2(u);
        }
        std::nth_element(norms.begin(), norms.begin() + (n_probe - n_probe / 10000 - 1),
                         norms.end());
        const double b = norms[n_probe - n_probe / 10000 - 1];
        const double needed = (1.0 + spec_.horizon_margin) * grid_.max_radius() * b;
        if (spec_.horizon_override) {
            if (*spec_.horizon_override < needed)
                throw std::invalid_argument("Class3Sampler: horizon too small for grid and atom law");
            horizon_ = *spec_.horizon_override;
        } else {
            horizon_ = needed;
        }
        if (horizon_ <= 0.0) horizon_ = 1.0;
    }

    double horizon() const { return horizon_; }
    const GridDomain& grid() const { return grid_; }

    SamplePath sample(std::uint64_t seed, bool centered) const {
        Rng rng(seed);
        SamplePath path(grid_.size(), 0.0);
        double t = 0.0;
        for (;;) {
            t += rng.exponential(spec_.gamma);
            if (t > horizon_) break;
            auto [v, u] = spec_.nu_sampler(rng);
            for (std::size_t i = 0; i < path.size(); ++i)
                if (t <= dot(nodes_[i], u)) path[i] += v;
        }
        if (centered) {
            const auto& m = mean_table();
            for (std::size_t i = 0; i < path.size(); ++i) path[i] -= m[i];
        }
        return path;
    }

    /// gamma * E[V (<u,U>)_+] per node, by the shared fixed-seed quadrature.
    const std::vector<double>& mean_table() const {
        std::call_once(mean_once_, [&] {
            mean_.assign(grid_.size(), 0.0);
            Rng rng(kQuadSeed);
            for (std::size_t k = 0; k < n_quad_; ++k) {
                auto [v, u] = spec_.nu_sampler(rng);
                for (std::size_t i = 0; i < grid_.size(); ++i) {
                    const double t = dot(nodes_[i], u);
                    if (t > 0.0) mean_[i] += v * t;
                }
            }
            const double inv = spec_.gamma / static_cast<double>(n_quad_);
            for (auto& m : mean_) m *= inv;
        });
        return mean_;
    }

  private:
    ClassIIISpec spec_;
    GridDomain grid_;
    std::size_t n_quad_;
    std::vector<Vec> nodes_;
    double horizon_ = 0.0;
    mutable std::once_flag mean_once_;
    mutable std::vector<double> mean_;
};

inline SamplePath sample_class3(const ClassIIISpec& spec, const GridDomain& grid,
                                std::uint64_t seed, bool centered) {
    return Class3Sampler(spec, grid).sample(seed, centered);
}

// ---------------------------------------------------------------------------
// Even-ness checks (executable Corollary criteria)
// ---------------------------------------------------------------------------

struct EvennessVerdict {
    enum class Kind { even, not_even, statistical };
    Kind kind;
    double p_value = std::numeric_limits<double>::quiet_NaN();
    std::string detail;

    bool exact_even() const { return kind == Kind::even; }
};

/// (A1): exact nodewise check of D(u)+X(u) = D(-u)+X(-u) on a symmetric grid.
inline EvennessVerdict check_evenness(const DriftSpec& drift, const PolyhedralCone& cone,
                                      const GridDomain& grid) {
    if (!grid.symmetric()) throw std::invalid_argument("check_evenness: grid not symmetric");
    const GridFunction ind = indicator(cone, grid);
    const std::vector<double> d = drift.on_grid(grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const std::size_t r = grid.reflect(i);
        const double a = d[i] + ind[i];
        const double b = d[r] + ind[r];
        const bool both_inf = (a == kInf && b == kInf);
        if (!both_inf && std::abs(a - b) > 1e-9 * (1.0 + std::abs(a) + std::abs(b)))
            return {EvennessVerdict::Kind::not_even, {}, "asymmetric at node " + std::to_string(i)};
        if ((a == kInf) != (b == kInf))
            return {EvennessVerdict::Kind::not_even, {}, "indicator asymmetric at node " + std::to_string(i)};
    }
    return {EvennessVerdict::Kind::even, {}, {}};
}

/// Corollary for Gaussian processes: exact kernel check Sigma(u,v) = Sigma(-u,-v).
inline EvennessVerdict check_evenness(const ClassIISpec& spec, const GridDomain& grid) {
    if (!grid.symmetric()) throw std::invalid_argument("check_evenness: grid not symmetric");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const Vec u = grid.node(i);
        for (std::size_t j = i; j < grid.size(); ++j) {
            const Vec v = grid.node(j);
            const double s1 = spec.kernel(u, v);
            const double s2 = spec.kernel(negate(u), negate(v));
            if (std::abs(s1 - s2) > 1e-9 * (1.0 + std::abs(s1) + std::abs(s2)))
                return {EvennessVerdict::Kind::not_even, {},
                        "kernel asymmetric at node pair (" + std::to_string(i) + "," +
                            std::to_string(j) + ")"};
        }
    }
    return {EvennessVerdict::Kind::even, {}, {}};
}

namespace detail {

// Statistical even-ness: KS between process values at u (one seed range) and
// at -u (a disjoint range), at a few probe nodes, Bonferroni-combined. A
// p-value, not a proof; the verdict kind says so.
inline EvennessVerdict evenness_from_paths(
    const GridDomain& grid, std::size_t n_mc, std::uint64_t seed,
    const std::function<SamplePath(std::uint64_t)>& draw) {
    if (!grid.symmetric()) throw std::invalid_argument("check_evenness: grid not symmetric");
    std::vector<std::size_t> probes;
    {
        // Farthest node, a mid-radius node, and one more off-center node.
        std::size_t far = 0;
        double best = -1.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double r = norm2(grid.node(i));
            if (r > best) {
                best = r;
                far = i;
            }
        }
        probes.push_back(far);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double r = norm2(grid.node(i));
            if (r > 0.3 * best && r < 0.7 * best) {
                probes.push_back(i);
                break;
            }
        }
    }
    double min_p = 1.0;
    for (std::size_t k = 0; k < probes.size(); ++k) {
        const std::size_t u_idx = probes[k];
        const std::size_t r_idx = grid.reflect(u_idx);
        std::vector<double> a(n_mc), b(n_mc);
        for (std::size_t i = 0; i < n_mc; ++i) {
            a[i] = draw(derive_seed(seed, 2 * n_mc * k + i))[u_idx];
            b[i] = draw(derive_seed(seed, 2 * n_mc * k + n_mc + i))[r_idx];
        }
        min_p = std::min(min_p, ks_two_sample(a, b).p_value);
    }
    const double p = std::min(1.0, min_p * static_cast<double>(probes.size()));
    return {EvennessVerdict::Kind::statistical, p, "two-sample KS at probe nodes"};
}

}  // namespace detail

inline EvennessVerdict check_evenness(const ClassISpec& spec, const GridDomain& grid,
                                      std::size_t n_mc, std::uint64_t seed) {
    return detail::evenness_from_paths(grid, n_mc, seed, [&](std::uint64_t s) {
        return sample_class1(spec, grid, s);
    });
}

inline EvennessVerdict check_evenness(const ClassIIISpec& spec, const GridDomain& grid,
                                      std::size_t n_mc, std::uint64_t seed) {
    Class3Sampler sampler(spec, grid);
    return detail::evenness_from_paths(grid, n_mc, seed, [&](std::uint64_t s) {
        return sampler.sample(s, false);
    });
}

}  // namespace argmin
