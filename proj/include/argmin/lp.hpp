#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace argmin {

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
    LpStatus status;
    double objective = 0.0;
    std::vector<double> x;
};

/// Dense two-phase primal simplex for  min c.x  s.t.  A x = b, x >= 0.
/// Bland's rule, so it terminates. Sized for few rows and up to ~1e4 columns,
/// which is all the convex-envelope LPs need.
class SimplexLp {
  public:
    static LpResult solve(const std::vector<std::vector<double>>& A, std::vector<double> b,
                          const std::vector<double>& c, double eps = 1e-10) {
        const std::size_t m = A.size();
        const std::size_t n = m ? A[0].size() : c.size();
        // Make b >= 0.
        std::vector<std::vector<double>> T(m, std::vector<double>(n + m + 1, 0.0));
        for (std::size_t i = 0; i < m; ++i) {
            const double s = (b[i] < 0.0) ? -1.0 : 1.0;
            for (std::size_t j = 0; j < n; ++j) T[i][j] = s * A[i][j];
            T[i][n + i] = 1.0;  // artificial
            T[i][n + m] = s * b[i];
        }
        std::vector<std::size_t> basis(m);
        for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

        // Phase 1: minimize sum of artificials.
        std::vector<double> cost(n + m, 0.0);
        for (std::size_t j = n; j < n + m; ++j) cost[j] = 1.0;
        if (!run(T, basis, cost, n + m, eps)) return {LpStatus::unbounded};
        double art = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            if (basis[i] >= n) art += T[i][n + m];
        if (art > 1e-7) return {LpStatus::infeasible};
        // Drive leftover artificials out of the basis where possible.
        for (std::size_t i = 0; i < m; ++i) {
            if (basis[i] < n) continue;
            std::size_t piv = n;
            for (std::size_t j = 0; j < n; ++j)
                if (std::abs(T[i][j]) > eps) { piv = j; break; }
            if (piv < n) pivot(T, basis, i, piv);
        }

        // Phase 2.
        std::vector<double> cost2(n + m, 0.0);
        for (std::size_t j = 0; j < n; ++j) cost2[j] = c[j];
        for (std::size_t j = n; j < n + m; ++j) cost2[j] = 1e30;  // artificials stay out
        if (!run(T, basis, cost2, n, eps)) return {LpStatus::unbounded};

        LpResult r;
        r.status = LpStatus::optimal;
        r.x.assign(n, 0.0);
        for (std::size_t i = 0; i < m; ++i)
            if (basis[i] < n) r.x[basis[i]] = T[i][n + m];
        for (std::size_t j = 0; j < n; ++j) r.objective += c[j] * r.x[j];
        return r;
    }

  private:
    static void pivot(std::vector<std::vector<double>>& T, std::vector<std::size_t>& basis,
                      std::size_t row, std::size_t col) {
        const std::size_t w = T[0].size();
        const double p = T[row][col];
        for (std::size_t j = 0; j < w; ++j) T[row][j] /= p;
        for (std::size_t i = 0; i < T.size(); ++i) {
            if (i == row) continue;
            const double f = T[i][col];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < w; ++j) T[i][j] -= f * T[row][j];
        }
        basis[row] = col;
    }

    // Returns false on unboundedness.
    static bool run(std::vector<std::vector<double>>& T, std::vector<std::size_t>& basis,
                    const std::vector<double>& cost, std::size_t ncols, double eps) {
        const std::size_t m = T.size();
        const std::size_t rhs = T.empty() ? 0 : T[0].size() - 1;
        for (;;) {
            // Reduced costs via basis multipliers.
            std::vector<double> y(m);
            for (std::size_t i = 0; i < m; ++i) y[i] = cost[basis[i]];
            std::size_t enter = ncols;
            for (std::size_t j = 0; j < ncols; ++j) {
                double rc = cost[j];
                for (std::size_t i = 0; i < m; ++i) rc -= y[i] * T[i][j];
                if (rc < -eps) { enter = j; break; }  // Bland
            }
            if (enter == ncols) return true;
            std::size_t leave = m;
            double best = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                if (T[i][enter] > eps) {
                    const double ratio = T[i][rhs] / T[i][enter];
                    if (leave == m || ratio < best - eps ||
                        (ratio < best + eps && basis[i] < basis[leave])) {
                        leave = i;
                        best = ratio;
                    }
                }
            }
            if (leave == m) return false;
            pivot(T, basis, leave, enter);
        }
    }
};

}  // namespace argmin
