#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "argmin/argmin.hpp"
#include "argmin/cones.hpp"
#include "argmin/processes.hpp"
#include "argmin/rng.hpp"
#include "argmin/util.hpp"

namespace argmin {

/// IID observations, one row per observation. For regressions the covariate
/// columns come first and the response is last.
struct Dataset {
    std::vector<Vec> rows;
    std::string label;
    std::uint64_t seed = 0;

    std::size_t n() const { return rows.size(); }
    std::size_t d() const { return rows.empty() ? 0 : rows[0].size(); }

    void validate() const {
        if (rows.empty()) throw std::invalid_argument("Dataset: empty");
        for (const auto& r : rows) {
            if (r.size() != rows[0].size()) throw std::invalid_argument("Dataset: ragged rows");
            for (double v : r)
                if (!std::isfinite(v)) throw std::invalid_argument("Dataset: non-finite entry");
        }
    }

    std::vector<double> column(std::size_t j) const {
        std::vector<double> out(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) out[i] = rows[i][j];
        return out;
    }

    void write_csv(std::ostream& os) const {
        for (std::size_t j = 0; j < d(); ++j) os << "c_" << (j + 1) << (j + 1 < d() ? "," : "\n");
        for (const auto& r : rows) {
            for (std::size_t j = 0; j < r.size(); ++j)
                os << format_double(r[j]) << (j + 1 < r.size() ? "," : "\n");
        }
    }

    static Dataset read_csv(std::istream& is) {
        Dataset ds;
        std::string line;
        if (!std::getline(is, line)) throw std::invalid_argument("Dataset csv: empty input");
        while (std::getline(is, line)) {
            if (line.empty()) continue;
            std::stringstream ls(line);
            std::string cell;
            Vec row;
            while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
            ds.rows.push_back(std::move(row));
        }
        ds.validate();
        return ds;
    }
};

// ---------------------------------------------------------------------------
// Example 1: constrained mean
// ---------------------------------------------------------------------------

inline Vec fit_constrained_mean(const Dataset& data, const PolyhedralSet& set) {
    data.validate();
    if (data.d() != set.dim())
        throw std::invalid_argument("fit_constrained_mean: dimension mismatch");
    Vec mean(data.d(), 0.0);
    for (const auto& r : data.rows)
        for (std::size_t j = 0; j < mean.size(); ++j) mean[j] += r[j];
    for (auto& m : mean) m /= static_cast<double>(data.n());
    return set.project(mean);
}

// ---------------------------------------------------------------------------
// Example 2: least absolute deviations (with intercept)
// ---------------------------------------------------------------------------

namespace detail {

inline double lad_objective(const Dataset& data, const Vec& beta) {
    double obj = 0.0;
    for (const auto& r : data.rows) {
        double pred = beta[0];
        for (std::size_t j = 0; j + 1 < r.size(); ++j) pred += beta[j + 1] * r[j];
        obj += std::abs(r.back() - pred);
    }
    return obj;
}

inline double lower_median_interval_mid(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    const std::size_t n = xs.size();
    if (n % 2 == 1) return xs[n / 2];
    return 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

}  // namespace detail

/// Minimizes sum |y_i - b0 - <b, x_i>|. Intercept-only reduces to the sample
/// median (midpoint convention for even n). Otherwise IRLS warm start, then a
/// polish over interpolating fits through small-residual subsets; a vertex
/// solution always exists, and the winner is checked against the subgradient
/// optimality condition.
inline Vec fit_lad(const Dataset& data) {
    data.validate();
    const std::size_t n = data.n();
    const std::size_t k = data.d();  // parameters: intercept + (d-1) slopes
    if (k == 1) return {detail::lower_median_interval_mid(data.column(0))};

    Eigen::MatrixXd X(n, k);
    Eigen::VectorXd y(n);
    for (std::size_t i = 0; i < n; ++i) {
        X(i, 0) = 1.0;
        for (std::size_t j = 0; j + 1 < data.d(); ++j) X(i, j + 1) = data.rows[i][j];
        y(i) = data.rows[i].back();
    }
    if (Eigen::FullPivLU<Eigen::MatrixXd>(X.transpose() * X).rank() < static_cast<Eigen::Index>(k))
        throw std::invalid_argument("fit_lad: rank-deficient design");

    // IRLS on |r| ~ r^2 / max(|r|, eps).
    Eigen::VectorXd beta = (X.transpose() * X).ldlt().solve(X.transpose() * y);
    for (int it = 0; it < 60; ++it) {
        Eigen::VectorXd r = y - X * beta;
        Eigen::VectorXd w = (r.cwiseAbs().array() + 1e-8).inverse().matrix();
        Eigen::MatrixXd Xw = w.asDiagonal() * X;
        beta = (X.transpose() * Xw).ldlt().solve(Xw.transpose() * y);
    }

    auto obj_of = [&](const Eigen::VectorXd& b) {
        Vec bb(b.data(), b.data() + b.size());
        return detail::lad_objective(data, bb);
    };
    Eigen::VectorXd best = beta;
    double best_obj = obj_of(best);

    // Candidate vertices: exact fits through k-subsets of the 2k+2
    // smallest-residual observations (plus full enumeration at desk scale).
    auto try_subset = [&](const std::vector<std::size_t>& idx) {
        Eigen::MatrixXd A(k, k);
        Eigen::VectorXd b(k);
        for (std::size_t i = 0; i < k; ++i) {
            A.row(i) = X.row(idx[i]);
            b(i) = y(idx[i]);
        }
        Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
        if (!lu.isInvertible()) return;
        Eigen::VectorXd cand = lu.solve(b);
        const double o = obj_of(cand);
        if (o < best_obj) {
            best_obj = o;
            best = cand;
        }
    };

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    {
        Eigen::VectorXd r = y - X * beta;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return std::abs(r(a)) < std::abs(r(b)); });
    }
    const std::size_t pool = std::min<std::size_t>(n, 2 * k + 2);
    std::vector<std::size_t> pick(k);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
        if (depth == k) {
            try_subset(pick);
            return;
        }
        for (std::size_t i = start; i < pool; ++i) {
            pick[depth] = order[i];
            rec(i + 1, depth + 1);
        }
    };
    rec(0, 0);

    // Full elemental enumeration when cheap; it certifies global optimality.
    double n_choose_k = 1.0;
    for (std::size_t i = 0; i < k; ++i)
        n_choose_k *= static_cast<double>(n - i) / static_cast<double>(i + 1);
    if (n_choose_k <= 2e5) {
        std::function<void(std::size_t, std::size_t)> all = [&](std::size_t start, std::size_t depth) {
            if (depth == k) {
                try_subset(pick);
                return;
            }
            for (std::size_t i = start; i < n; ++i) {
                pick[depth] = i;
                all(i + 1, depth + 1);
            }
        };
        all(0, 0);
    }

    // Subgradient certificate: 0 must lie in the subdifferential at the winner.
    {
        Eigen::VectorXd r = y - X * best;
        const double tol = 1e-7 * (1.0 + y.cwiseAbs().maxCoeff());
        Eigen::VectorXd g = Eigen::VectorXd::Zero(k), slack = Eigen::VectorXd::Zero(k);
        for (std::size_t i = 0; i < n; ++i) {
            if (std::abs(r(i)) > tol)
                g -= (r(i) > 0 ? 1.0 : -1.0) * X.row(i).transpose();
            else
                slack += X.row(i).cwiseAbs().transpose();
        }
        for (std::size_t j = 0; j < k; ++j)
            if (std::abs(g(j)) > slack(j) + 1e-6 * (1.0 + slack(j)))
                throw std::runtime_error("fit_lad: subgradient certificate failed");
    }
    return Vec(best.data(), best.data() + best.size());
}

// ---------------------------------------------------------------------------
// Example 3: bridge (penalized least squares, no intercept)
// ---------------------------------------------------------------------------

namespace detail {

/// argmin over t of A t^2 - 2 B t + lam |t|^mu  (A > 0, lam >= 0, mu > 0).
inline double bridge_coord_min(double A, double B, double lam, double mu) {
    if (lam == 0.0) return B / A;
    auto phi = [&](double t) { return A * t * t - 2.0 * B * t + lam * std::pow(std::abs(t), mu); };
    double best_t = 0.0;
    double best_v = 0.0;  // phi(0) = 0
    for (double s : {1.0, -1.0}) {
        const double Bs = s * B;
        // Minimize A t^2 - 2 Bs t + lam t^mu over t > 0.
        auto psi = [&](double t) {
            return 2.0 * A * t - 2.0 * Bs + lam * mu * std::pow(t, mu - 1.0);
        };
        double root = -1.0;
        if (mu > 1.0) {
            if (Bs > 0.0) {
                double hi = std::max(Bs / A, 1e-12);
                while (psi(hi) < 0.0) hi *= 2.0;
                double lo = 0.0;
                for (int it = 0; it < 200; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    (psi(mid) < 0.0 ? lo : hi) = mid;
                }
                root = 0.5 * (lo + hi);
            }
        } else if (mu == 1.0) {
            const double t = (2.0 * Bs - lam) / (2.0 * A);
            if (t > 0.0) root = t;
        } else {
            // psi decreases from +inf to its minimum at t*, then increases.
            const double tstar = std::pow(lam * mu * (1.0 - mu) / (2.0 * A), 1.0 / (2.0 - mu));
            if (psi(tstar) < 0.0) {
                double hi = std::max({tstar, Bs / A, 1.0});
                while (psi(hi) < 0.0) hi *= 2.0;
                double lo = tstar;
                for (int it = 0; it < 200; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    (psi(mid) < 0.0 ? lo : hi) = mid;
                }
                root = 0.5 * (lo + hi);  // the larger root = local min of phi
            }
        }
        if (root > 0.0) {
            const double v = phi(s * root);
            if (v < best_v) {
                best_v = v;
                best_t = s * root;
            }
        }
    }
    return best_t;
}

}  // namespace detail

struct BridgeFit {
    Vec theta;
    double objective = 0.0;
    bool global_certified = false;  // true for mu >= 1 (convex, stationarity checked)
    double stationarity_residual = 0.0;
};

/// Penalized least squares sum (y - <theta, x>)^2 + lambda sum |theta_j|^mu.
/// mu >= 1: exact coordinate descent on the convex objective with a
/// stationarity certificate. mu < 1: multi-start (sign patterns of the OLS
/// solution plus zero) coordinate descent; reported as best-found.
inline BridgeFit fit_bridge(const Dataset& data, double lambda, double mu) {
    data.validate();
    if (mu <= 0.0 || lambda < 0.0) throw std::invalid_argument("fit_bridge: bad lambda/mu");
    const std::size_t n = data.n();
    const std::size_t p = data.d() - 1;
    if (p == 0) throw std::invalid_argument("fit_bridge: no covariates");
    Eigen::MatrixXd X(n, p);
    Eigen::VectorXd y(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < p; ++j) X(i, j) = data.rows[i][j];
        y(i) = data.rows[i].back();
    }
    const Eigen::MatrixXd G = X.transpose() * X;
    const Eigen::VectorXd c = X.transpose() * y;
    for (std::size_t j = 0; j < p; ++j)
        if (G(j, j) <= 0.0) throw std::invalid_argument("fit_bridge: zero covariate column");

    auto objective = [&](const Eigen::VectorXd& th) {
        double pen = 0.0;
        for (std::size_t j = 0; j < p; ++j) pen += std::pow(std::abs(th(j)), mu);
        return (y - X * th).squaredNorm() + lambda * pen;
    };
    auto descend = [&](Eigen::VectorXd th) {
        for (int sweep = 0; sweep < 500; ++sweep) {
            double delta = 0.0;
            for (std::size_t j = 0; j < p; ++j) {
                double B = c(j);
                for (std::size_t l = 0; l < p; ++l)
                    if (l != j) B -= G(j, l) * th(l);
                const double t = detail::bridge_coord_min(G(j, j), B, lambda, mu);
                delta = std::max(delta, std::abs(t - th(j)));
                th(j) = t;
            }
            if (delta < 1e-13 * (1.0 + th.cwiseAbs().maxCoeff())) break;
        }
        return th;
    };

    const Eigen::VectorXd ols = G.ldlt().solve(c);
    Eigen::VectorXd best;
    double best_obj = kInf;
    std::vector<Eigen::VectorXd> starts;
    starts.push_back(Eigen::VectorXd::Zero(p));
    if (mu >= 1.0) {
        starts.push_back(ols);
    } else {
        for (std::size_t mask = 0; mask < (std::size_t{1} << p); ++mask) {
            Eigen::VectorXd s = ols;
            for (std::size_t j = 0; j < p; ++j)
                if (mask & (std::size_t{1} << j)) s(j) = -s(j);
            starts.push_back(s);
        }
    }
    for (const auto& s : starts) {
        const Eigen::VectorXd th = descend(s);
        const double o = objective(th);
        if (o < best_obj) {
            best_obj = o;
            best = th;
        }
    }

    BridgeFit out;
    out.theta = Vec(best.data(), best.data() + best.size());
    out.objective = best_obj;
    if (mu >= 1.0) {
        // Stationarity residual of the convex objective; 0 certifies globality.
        double res = 0.0;
        const Eigen::VectorXd grad_ls = 2.0 * (G * best - c);
        for (std::size_t j = 0; j < p; ++j) {
            const double t = best(j);
            if (mu > 1.0) {
                const double pg = lambda * mu * std::pow(std::abs(t), mu - 1.0) *
                                  ((t > 0) - (t < 0));
                res = std::max(res, std::abs(grad_ls(j) + pg));
            } else {
                if (t != 0.0)
                    res = std::max(res, std::abs(grad_ls(j) + lambda * ((t > 0) - (t < 0))));
                else
                    res = std::max(res, std::max(0.0, std::abs(grad_ls(j)) - lambda));
            }
        }
        out.stationarity_residual = res;
        out.global_certified = res <= 1e-6 * (1.0 + c.cwiseAbs().maxCoeff());
    }
    return out;
}

// ---------------------------------------------------------------------------
// Example 4: shorth
// ---------------------------------------------------------------------------

struct ShorthFit {
    double center = 0.0;
    double width = 0.0;
    bool tie = false;
};

/// Midpoint of the narrowest window of ceil(n/2) consecutive order statistics;
/// width ties resolve to the smallest left endpoint and are recorded.
inline ShorthFit fit_shorth(const Dataset& data) {
    data.validate();
    if (data.d() != 1) throw std::invalid_argument("fit_shorth: univariate data expected");
    std::vector<double> xs = data.column(0);
    if (xs.size() < 2) throw std::invalid_argument("fit_shorth: need n >= 2");
    std::sort(xs.begin(), xs.end());
    const std::size_t n = xs.size();
    const std::size_t k = (n + 1) / 2;  // ceil(n/2)
    ShorthFit out;
    double best_w = kInf;
    std::size_t best_j = 0;
    bool tie = false;
    for (std::size_t j = 0; j + k <= n; ++j) {
        const double w = xs[j + k - 1] - xs[j];
        if (w < best_w) {
            best_w = w;
            best_j = j;
            tie = false;
        } else if (w == best_w) {
            tie = true;
        }
    }
    out.center = 0.5 * (xs[best_j] + xs[best_j + k - 1]);
    out.width = best_w;
    out.tie = tie;
    return out;
}

// ---------------------------------------------------------------------------
// Example 5: least median of squares (through-origin model, p <= 2)
// ---------------------------------------------------------------------------

namespace detail {

// h-th smallest squared residual (the LMS criterion with coverage h).
inline double lms_criterion(std::vector<double> abs_res, std::size_t h) {
    std::nth_element(abs_res.begin(), abs_res.begin() + (h - 1), abs_res.end());
    const double a = abs_res[h - 1];
    return a * a;
}

}  // namespace detail

/// d = 1: location model (equivalent to the shortest-half midpoint).
/// d = 2: slope through origin, exact via residual-tie candidates.
/// d = 3: two slopes through origin, best-found via elemental Chebyshev fits.
/// The coverage count is h = ceil(n/2), matching the shorth convention.
inline Vec fit_lms(const Dataset& data) {
    data.validate();
    const std::size_t n = data.n();
    const std::size_t p = data.d() - 1;  // parameters (0 => location)
    if (p > 2) throw std::invalid_argument("fit_lms: p <= 2 only");
    if (n < 2 * (p == 0 ? 1 : p) + 1) throw std::invalid_argument("fit_lms: too few observations");
    const std::size_t h = (n + 1) / 2;

    if (p == 0) {
        Dataset d1;
        d1.rows = data.rows;
        const ShorthFit s = fit_shorth(d1);
        return {s.center};
    }

    auto criterion = [&](const Vec& theta) {
        std::vector<double> ar(n);
        for (std::size_t i = 0; i < n; ++i) {
            double pred = 0.0;
            for (std::size_t j = 0; j < p; ++j) pred += theta[j] * data.rows[i][j];
            ar[i] = std::abs(data.rows[i].back() - pred);
        }
        return detail::lms_criterion(ar, h);
    };

    Vec best;
    double best_c = kInf;
    auto consider = [&](const Vec& theta) {
        for (double t : theta)
            if (!std::isfinite(t)) return;
        const double cst = criterion(theta);
        if (best.empty() || cst < best_c - 1e-15 ||
            (cst <= best_c + 1e-15 && theta < best)) {
            best_c = cst;
            best = theta;
        }
    };

    if (p == 1) {
        // Equal-|x| designs (e.g. +-1): |y - theta x| = |x| |y/x - theta|, so the
        // criterion is the shortest half of z = y/x. Exact and O(n log n).
        bool equal_abs = true;
        const double a0 = std::abs(data.rows[0][0]);
        for (const auto& r : data.rows)
            if (r[0] == 0.0 || std::abs(std::abs(r[0]) - a0) > 1e-12 * a0) {
                equal_abs = false;
                break;
            }
        if (equal_abs && a0 > 0.0) {
            Dataset z;
            for (const auto& r : data.rows) z.rows.push_back({r.back() / r[0]});
            return {fit_shorth(z).center};
        }
        // Candidates: slopes where two absolute residuals tie, plus exact fits.
        for (std::size_t i = 0; i < n; ++i) {
            const double xi = data.rows[i][0], yi = data.rows[i].back();
            if (xi != 0.0) consider({yi / xi});
            for (std::size_t j = i + 1; j < n; ++j) {
                const double xj = data.rows[j][0], yj = data.rows[j].back();
                if (xi != xj) consider({(yi - yj) / (xi - xj)});
                if (xi + xj != 0.0) consider({(yi + yj) / (xi + xj)});
            }
        }
        return best;
    }

    // p = 2: elemental Chebyshev fits: for each triple and sign pattern, solve
    // y_i - <theta, x_i> = s_i * m.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t l = j + 1; l < n; ++l)
                for (int pat = 0; pat < 4; ++pat) {
                    Eigen::Matrix3d A;
                    Eigen::Vector3d b;
                    const std::size_t idx[3] = {i, j, l};
                    for (int r = 0; r < 3; ++r) {
                        A(r, 0) = data.rows[idx[r]][0];
                        A(r, 1) = data.rows[idx[r]][1];
                        const double s = (r == 0) ? 1.0 : ((pat >> (r - 1)) & 1 ? 1.0 : -1.0);
                        A(r, 2) = s;
                        b(r) = data.rows[idx[r]].back();
                    }
                    Eigen::FullPivLU<Eigen::Matrix3d> lu(A);
                    if (!lu.isInvertible()) continue;
                    const Eigen::Vector3d sol = lu.solve(b);
                    consider({sol(0), sol(1)});
                }
    return best;
}

// ---------------------------------------------------------------------------
// Example 6: spacing-based mode estimator
// ---------------------------------------------------------------------------

struct ModeFit {
    double theta = 0.0;
    bool tie = false;
};

/// Sorts the data and returns the order statistic at the argmin of the
/// r_n-spacing W_(j+r) - W_(j-r) over j in [r+1, n-r] (1-indexed); spacing
/// ties go to the smallest j and are recorded.
inline ModeFit fit_mode_venter(const Dataset& data, std::size_t r) {
    data.validate();
    if (data.d() != 1) throw std::invalid_argument("fit_mode_venter: univariate data expected");
    std::vector<double> xs = data.column(0);
    const std::size_t n = xs.size();
    if (n < 2 * r + 2) throw std::invalid_argument("fit_mode_venter: r_n too large");
    std::sort(xs.begin(), xs.end());
    ModeFit out;
    double best = kInf;
    std::size_t best_j = 0;
    for (std::size_t j = r; j + r < n; ++j) {  // 0-indexed j0 = j with 1-indexed j0+1
        const double sp = xs[j + r] - xs[j - r];
        if (sp < best) {
            best = sp;
            best_j = j;
            out.tie = false;
        } else if (sp == best) {
            out.tie = true;
        }
    }
    out.theta = xs[best_j];
    return out;
}

// ---------------------------------------------------------------------------
// Example 7: MLE under an error density with a jump at zero
// ---------------------------------------------------------------------------

struct JumpDensitySpec {
    std::function<double(double xi, double x)> log_density;  // log f(xi | x)
    std::function<double(double x)> right_limit;             // p(x): limit as xi -> 0+
    std::function<double(double x)> left_limit;              // q(x): limit as xi -> 0-

    /// p(x) - delta > q(x) > c > 0 on a probe set of covariate values.
    void validate(const std::vector<double>& probe_xs, double delta = 1e-6, double c = 1e-6) const {
        for (double x : probe_xs) {
            const double p = right_limit(x), q = left_limit(x);
            if (!(p - delta > q && q > c))
                throw std::invalid_argument("JumpDensitySpec: branch ordering p > q > 0 violated");
        }
    }

    /// f(xi) = p e^{-xi} for xi >= 0, q e^{xi} for xi < 0, with p + q = 1.
    static JumpDensitySpec two_sided_exponential(double p, double q) {
        if (std::abs(p + q - 1.0) > 1e-12 || !(p > q && q > 0.0))
            throw std::invalid_argument("two_sided_exponential: need p + q = 1, p > q > 0");
        JumpDensitySpec s;
        s.log_density = [p, q](double xi, double) {
            return xi >= 0.0 ? std::log(p) - xi : std::log(q) + xi;
        };
        s.right_limit = [p](double) { return p; };
        s.left_limit = [q](double) { return q; };
        return s;
    }
};

struct MleJumpFit {
    double theta = 0.0;
    double loglik = 0.0;
    bool tie = false;
};

/// Grid argmax of the log-likelihood sum log f(y_i - theta x_i | x_i) over
/// theta_grid, refined by golden-section search on the bracketing cells.
inline MleJumpFit fit_mle_jump(const Dataset& data, const std::vector<double>& theta_grid,
                               const JumpDensitySpec& density) {
    data.validate();
    if (data.d() != 2) throw std::invalid_argument("fit_mle_jump: rows must be (x, y)");
    if (theta_grid.size() < 2) throw std::invalid_argument("fit_mle_jump: grid too small");
    {
        std::vector<double> probe;
        for (const auto& r : data.rows) probe.push_back(r[0]);
        density.validate(probe);
    }
    auto loglik = [&](double theta) {
        double ll = 0.0;
        for (const auto& r : data.rows) ll += density.log_density(r[1] - theta * r[0], r[0]);
        return ll;
    };
    std::size_t best_k = 0;
    double best_ll = -kInf;
    bool tie = false;
    for (std::size_t k = 0; k < theta_grid.size(); ++k) {
        const double ll = loglik(theta_grid[k]);
        if (ll > best_ll) {
            best_ll = ll;
            best_k = k;
            tie = false;
        } else if (ll == best_ll) {
            tie = true;
        }
    }
    // Golden-section refinement on the cell around the grid argmax.
    double lo = theta_grid[best_k == 0 ? 0 : best_k - 1];
    double hi = theta_grid[std::min(best_k + 1, theta_grid.size() - 1)];
    const double gr = 0.6180339887498949;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = loglik(x1), f2 = loglik(x2);
    for (int it = 0; it < 80; ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = loglik(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = loglik(x1);
        }
    }
    MleJumpFit out;
    out.theta = theta_grid[best_k];
    out.loglik = best_ll;
    const double mid = 0.5 * (lo + hi);
    const double llm = loglik(mid);
    if (llm > best_ll) {
        out.theta = mid;
        out.loglik = llm;
    }
    out.tie = tie;
    return out;
}

// ---------------------------------------------------------------------------
// Scenario registry: generator + fit + rate + simulated/closed-form limit
// ---------------------------------------------------------------------------

/// Everything the finite-sample-to-limit comparison needs for one estimator:
/// a data generator at the true parameter, a scalar fit, the convergence rate,
/// and a sampler for the registered limit law of rate * (estimate - theta0).
struct EstimatorScenario {
    std::string id;
    std::string description;
    double theta0 = 0.0;
    std::function<Dataset(std::size_t n, std::uint64_t seed)> generate;
    std::function<double(const Dataset&)> fit;
    std::function<double(double n)> rate;
    std::string limit_label;
    std::function<std::vector<double>(std::size_t n_draws, std::uint64_t seed, int workers)>
        limit_sampler;
};

namespace detail {

inline double laplace_draw(Rng& rng) {
    const double u = rng.uniform() - 0.5;
    return (u < 0 ? 1.0 : -1.0) * std::log(1.0 - 2.0 * std::abs(u));
}

inline std::vector<double> engine_limit_draws(const DriftSpec& drift,
                                              const StochasticPartSpec& part,
                                              const PolyhedralCone& cone, const GridDomain& grid,
                                              std::size_t n_draws, std::uint64_t seed,
                                              int workers) {
    ArgminEngine engine(drift, part, cone, grid);
    const EmpiricalDistribution dist = engine.distribution(n_draws, seed, 0, workers);
    std::vector<double> out(n_draws);
    for (std::size_t i = 0; i < n_draws; ++i) out[i] = dist.samples[i][0];
    return out;
}

}  // namespace detail

inline std::map<std::string, EstimatorScenario> estimator_registry() {
    std::map<std::string, EstimatorScenario> reg;

    // Example 1: mean of N(0,1) data constrained to [0, inf); limit max(N(0,1), 0).
    {
        EstimatorScenario s;
        s.id = "constrained_mean";
        s.description = "mean constrained to [0, inf), true value on the boundary";
        s.theta0 = 0.0;
        s.generate = [](std::size_t n, std::uint64_t seed) {
            Dataset d;
            d.label = "gaussian_mean0";
            d.seed = seed;
            Rng rng(seed);
            for (std::size_t i = 0; i < n; ++i) d.rows.push_back({rng.normal()});
            return d;
        };
        s.fit = [](const Dataset& d) {
            const PolyhedralSet nonneg(1, {{{-1.0}, 0.0}}, {});
            return fit_constrained_mean(d, nonneg)[0];
        };
        s.rate = [](double n) { return std::sqrt(n); };
        s.limit_label = "max(N(0,1), 0)";
        s.limit_sampler = [](std::size_t n_draws, std::uint64_t seed, int) {
            std::vector<double> out(n_draws);
            for (std::size_t i = 0; i < n_draws; ++i) {
                Rng rng(derive_seed(seed, i));
                out[i] = std::max(rng.normal(), 0.0);
            }
            return out;
        };
        reg[s.id] = s;
    }

    // Example 2: intercept-only LAD (sample median), Laplace errors with
    // density 1/2 at zero; limit N(0,1).
    {
        EstimatorScenario s;
        s.id = "lad";
        s.description = "sample median of Laplace(0,1) data";
        s.theta0 = 0.0;
        s.generate = [](std::size_t n, std::uint64_t seed) {
            Dataset d;
            d.label = "laplace_location";
            d.seed = seed;
            Rng rng(seed);
            for (std::size_t i = 0; i < n; ++i) d.rows.push_back({detail::laplace_draw(rng)});
            return d;
        };
        s.fit = [](const Dataset& d) { return fit_lad(d)[0]; };
        s.rate = [](double n) { return std::sqrt(n); };
        s.limit_label = "N(0,1)";
        s.limit_sampler = [](std::size_t n_draws, std::uint64_t seed, int) {
            std::vector<double> out(n_draws);
            for (std::size_t i = 0; i < n_draws; ++i) {
                Rng rng(derive_seed(seed, i));
                out[i] = rng.normal();
            }
            return out;
        };
        reg[s.id] = s;
    }

    // Example 3: ridge-type bridge (mu = 2) with lambda_n = lambda0 sqrt(n);
    // the penalty shifts the limit to N(-lambda0 * theta0, 1): a median-biased
    // negative control.
    {
        const double lambda0 = 0.5, theta0 = 1.0;
        EstimatorScenario s;
        s.id = "bridge";
        s.description = "ridge-penalized slope, lambda_n = 0.5 sqrt(n), theta0 = 1";
        s.theta0 = theta0;
        s.generate = [theta0](std::size_t n, std::uint64_t seed) {
            Dataset d;
            d.label = "bridge_mu2";
            d.seed = seed;
            Rng rng(seed);
            for (std::size_t i = 0; i < n; ++i) {
                const double x = rng.normal();
                d.rows.push_back({x, theta0 * x + rng.normal()});
            }
            return d;
        };
        s.fit = [lambda0](const Dataset& d) {
            const double lam = lambda0 * std::sqrt(static_cast<double>(d.n()));
            return fit_bridge(d, lam, 2.0).theta[0];
        };
        s.rate = [](double n) { return std::sqrt(n); };
        s.limit_label = "N(-0.5, 1)";
        s.limit_sampler = [lambda0, theta0](std::size_t n_draws, std::uint64_t seed, int) {
            std::vector<double> out(n_draws);
            for (std::size_t i = 0; i < n_draws; ++i) {
                Rng rng(derive_seed(seed, i));
                out[i] = rng.normal() - lambda0 * theta0;
            }
            return out;
        };
        reg[s.id] = s;
    }

    // Example 4: shorth under N(0,1); cube-root rate, symmetric limit
    // (two-sided Brownian-type GP plus c0 u^2 / 2).
    {
        const double r0 = 0.6744897501960817;       // half-length of the shortest half
        const double phir0 = 0.3177765861629433;    // standard normal density at r0
        const double c0 = 2.0 * r0 * phir0;
        EstimatorScenario s;
        s.id = "shorth";
        s.description = "shortest-half midpoint of N(0,1) data";
        s.theta0 = 0.0;
        s.generate = [](std::size_t n, std::uint64_t seed) {
            Dataset d;
            d.label = "gaussian_shorth";
            d.seed = seed;
            Rng rng(seed);
            for (std::size_t i = 0; i < n; ++i) d.rows.push_back({rng.normal()});
            return d;
        };
        s.fit = [](const Dataset& d) { return fit_shorth(d).center; };
        s.rate = [](double n) { return std::cbrt(n); };
        s.limit_label = "argmin GP(2 phi(r0) min) + c0 u^2/2";
        s.limit_sampler = [c0, phir0](std::size_t n_draws, std::uint64_t seed, int workers) {
            const GridDomain grid = GridDomain::symmetric_1d(8.0, 80);
            const DriftSpec drift = DriftSpec::quadratic({{0.5 * c0}});
            ClassIISpec kernel = ClassIISpec::brownian_two_sided(2.0 * phir0);
            return detail::engine_limit_draws(drift, kernel, PolyhedralCone::full_space(1), grid,
                                              n_draws, seed, workers);
        };
        reg[s.id] = s;
    }

    // Example 5: least median of squares, slope through origin, Rademacher
    // design (E|X| = E[X^2] = 1) and Gaussian errors; cube-root rate,
    // symmetric GP limit.
    {
        const double theta0 = 2.0;
        const double m0 = 0.6744897501960817;   // median of |N(0,1)|
        const double p0m = 0.3177765861629433;  // density at m0
        const double dp0m = -m0 * p0m;          // density slope at m0
        const double eabsx = 1.0;               // E|X| for the +-1 design
        EstimatorScenario s;
        s.id = "lms";
        s.description = "least median of squares slope, +-1 design, Gaussian errors";
        s.theta0 = theta0;
        s.generate = [theta0](std::size_t n, std::uint64_t seed) {
            Dataset d;
            d.label = "lms_slope";
            d.seed = seed;
            Rng rng(seed);
            for (std::size_t i = 0; i < n; ++i) {
                const double x = rng.uniform() < 0.5 ? -1.0 : 1.0;
                d.rows.push_back({x, theta0 * x + rng.normal()});
            }
            return d;
        };
        s.fit = [](const Dataset& d) { return fit_lms(d)[0]; };
        s.rate = [](double n) { return std::cbrt(n); };
        s.limit_label = "argmin GP(Pflug) - p0'(m0) u^2";
        s.limit_sampler = [p0m, dp0m, eabsx](std::size_t n_draws, std::uint64_t seed, int workers) {
            const GridDomain grid = GridDomain::symmetric_1d(8.0, 80);
            const DriftSpec drift = DriftSpec::quadratic({{-dp0m}});
            ClassIISpec kernel = ClassIISpec::pflug(2.0 * p0m * eabsx, {{1.0, 1.0, {1.0}}});
            return detail::engine_limit_draws(drift, kernel, PolyhedralCone::full_space(1), grid,
                                              n_draws, seed, workers);
        };
        reg[s.id] = s;
    }

    // Example 6: spacing mode estimator under N(0,1), r_n = ceil(A n^mu),
    // mu = 4/5 (so no drift tilt); limit is Brownian GP + u^2 after the
    // paper's deterministic rescaling.
    {
        const double A = 1.0, mu = 0.8;
        const double kappa2 = 0.3989422804014327;  // -p0''(0) = phi(0)
        const double p00 = 0.3989422804014327;
        const double scale = std::pow(2.0, -1.0 / 3.0) * std::pow(A * kappa2, 2.0 / 3.0) / p00;
        EstimatorScenario s;
        s.id = "mode";
        s.description = "spacing-based mode estimator of N(0,1), r_n ~ n^{4/5}";
        s.theta0 = 0.0;
        s.generate = [](std::size_t n, std::uint64_t seed) {
            Dataset d;
            d.label = "gaussian_mode";
            d.seed = seed;
            Rng rng(seed);
            for (std::size_t i = 0; i < n; ++i) d.rows.push_back({rng.normal()});
            return d;
        };
        s.fit = [A, mu](const Dataset& d) {
            const std::size_t r = static_cast<std::size_t>(
                std::ceil(A * std::pow(static_cast<double>(d.n()), mu)));
            return fit_mode_venter(d, r).theta;
        };
        s.rate = [scale, mu](double n) { return scale * std::pow(n, (2.0 * mu - 1.0) / 3.0); };
        s.limit_label = "argmin GP(min) + u^2";
        s.limit_sampler = [](std::size_t n_draws, std::uint64_t seed, int workers) {
            const GridDomain grid = GridDomain::symmetric_1d(6.0, 60);
            const DriftSpec drift = DriftSpec::quadratic_identity(1);
            ClassIISpec kernel = ClassIISpec::brownian_two_sided(1.0);
            return detail::engine_limit_draws(drift, kernel, PolyhedralCone::full_space(1), grid,
                                              n_draws, seed, workers);
        };
        reg[s.id] = s;
    }

    // Example 7: MLE with a two-sided exponential error density jumping at 0
    // (p = 0.7, q = 0.3), unit covariate; rate n, centered-Poisson limit.
    {
        const double p = 0.7, q = 0.3;
        const double jump = std::log(p / q);
        EstimatorScenario s;
        s.id = "mle_jump";
        s.description = "MLE location with density jump at zero (p=0.7, q=0.3)";
        s.theta0 = 0.0;
        s.generate = [p](std::size_t n, std::uint64_t seed) {
            Dataset d;
            d.label = "jump_mle";
            d.seed = seed;
            Rng rng(seed);
            for (std::size_t i = 0; i < n; ++i) {
                // Two-sided exponential error: + Exp(1) w.p. p, - Exp(1) w.p. q.
                const double e = (rng.uniform() < p ? 1.0 : -1.0) * rng.exponential(1.0);
                d.rows.push_back({1.0, e});
            }
            return d;
        };
        s.fit = [p, q](const Dataset& d) {
            const auto density = JumpDensitySpec::two_sided_exponential(p, q);
            std::vector<double> grid;
            for (int k = -400; k <= 400; ++k) grid.push_back(0.02 * k);
            return fit_mle_jump(d, grid, density).theta;
        };
        s.rate = [](double n) { return n; };
        s.limit_label = "argmin cPoisson(2, (nu1+nu2)/2) + drift";
        s.limit_sampler = [p, q, jump](std::size_t n_draws, std::uint64_t seed, int workers) {
            const GridDomain grid = GridDomain::symmetric_1d(30.0, 300);
            // Drift E[<u,X>(q-p)] + E[(<u,X>)_+ log(p/q)(p+q)] with X = 1.
            DriftSpec drift = DriftSpec::example7(
                [p, q, jump](Rng&) {
                    return DriftSpec::Example7Draw{{1.0}, q - p, jump * (p + q)};
                },
                1, 1);
            ClassIIISpec part = ClassIIISpec::custom(
                2.0, 1,
                [p, q, jump](Rng& rng) {
                    return rng.uniform() < 0.5 ? std::make_pair(jump, Vec{p})
                                               : std::make_pair(-jump, Vec{-q});
                },
                "mle_jump_nu");
            return detail::engine_limit_draws(drift, part, PolyhedralCone::full_space(1), grid,
                                              n_draws, seed, workers);
        };
        reg[s.id] = s;
    }

    return reg;
}

inline nlohmann::json registry_json() {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& [id, s] : estimator_registry()) {
        out.push_back({{"id", id},
                       {"description", s.description},
                       {"theta0", s.theta0},
                       {"rate_at_1000", s.rate(1000.0)},
                       {"limit", s.limit_label}});
    }
    return out;
}

}  // namespace argmin
