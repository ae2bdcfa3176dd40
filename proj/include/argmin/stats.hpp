#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "argmin/rng.hpp"
#include "argmin/util.hpp"

namespace argmin {

/// Monte Carlo sample of argmin draws with its seed lineage (master seed plus
/// the half-open replicate index range), so independence of two batches is
/// checkable, plus per-replicate diagnostics.
struct EmpiricalDistribution {
    std::vector<Vec> samples;
    std::uint64_t master_seed = 0;
    std::uint64_t first_replicate = 0;  // range [first_replicate, last_replicate)
    std::uint64_t last_replicate = 0;
    std::vector<double> min_values;    // optional, same length as samples
    std::vector<int> tie_counts;       // optional
    std::vector<char> boundary_hits;   // optional

    std::size_t size() const { return samples.size(); }
    std::size_t dim() const { return samples.empty() ? 0 : samples[0].size(); }

    void validate() const {
        if (samples.empty()) throw std::invalid_argument("EmpiricalDistribution: empty");
        for (const auto& s : samples)
            if (s.size() != samples[0].size())
                throw std::invalid_argument("EmpiricalDistribution: ragged samples");
    }

    std::vector<double> axis(std::size_t d) const {
        std::vector<double> out(samples.size());
        for (std::size_t i = 0; i < samples.size(); ++i) out[i] = samples[i][d];
        return out;
    }

    double tie_fraction() const {
        if (tie_counts.empty()) return 0.0;
        std::size_t n = 0;
        for (int t : tie_counts) n += (t > 1);
        return static_cast<double>(n) / static_cast<double>(tie_counts.size());
    }

    double boundary_fraction() const {
        if (boundary_hits.empty()) return 0.0;
        std::size_t n = 0;
        for (char b : boundary_hits) n += (b != 0);
        return static_cast<double>(n) / static_cast<double>(boundary_hits.size());
    }

    bool seed_overlap(const EmpiricalDistribution& other) const {
        return master_seed == other.master_seed &&
               first_replicate < other.last_replicate && other.first_replicate < last_replicate;
    }

    void write_csv(std::ostream& os) const {
        const std::size_t p = dim();
        for (std::size_t d = 0; d < p; ++d) os << "w_" << (d + 1) << ",";
        os << "min_value,tie_count,boundary_hit\n";
        for (std::size_t i = 0; i < samples.size(); ++i) {
            for (double c : samples[i]) os << format_double(c) << ",";
            os << (i < min_values.size() ? format_double(min_values[i]) : std::string("nan")) << ","
               << (i < tie_counts.size() ? tie_counts[i] : 1) << ","
               << (i < boundary_hits.size() ? int(boundary_hits[i]) : 0) << "\n";
        }
    }
};

// ---------------------------------------------------------------------------
// Two-sample tests
// ---------------------------------------------------------------------------

struct KsResult {
    double statistic = 0.0;
    double p_value = 1.0;
};

/// Complement of the Kolmogorov distribution CDF.
inline double kolmogorov_sf(double x) {
    if (x <= 0.0) return 1.0;
    if (x > 8.0) return 0.0;
    double s = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * x * x);
        s += (k % 2 == 1 ? term : -term);
        if (term < 1e-16) break;
    }
    return std::min(1.0, std::max(0.0, 2.0 * s));
}

inline double ks_statistic(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

/// Two-sample KS with the asymptotic Kolmogorov p-value (Stephens' small-sample
/// correction on the effective sample size).
inline KsResult ks_two_sample(const std::vector<double>& a, const std::vector<double>& b) {
    const double d = ks_statistic(a, b);
    const double ne = static_cast<double>(a.size()) * static_cast<double>(b.size()) /
                      static_cast<double>(a.size() + b.size());
    const double t = (std::sqrt(ne) + 0.12 + 0.11 / std::sqrt(ne)) * d;
    return {d, kolmogorov_sf(t)};
}

namespace detail {

inline double energy_statistic(const std::vector<Vec>& pool, const std::vector<std::size_t>& idx,
                               std::size_t n) {
    // First n indices are sample A, rest sample B.
    const std::size_t m = idx.size() - n;
    auto dist = [&](std::size_t i, std::size_t j) {
        double s = 0.0;
        const Vec& x = pool[idx[i]];
        const Vec& y = pool[idx[j]];
        for (std::size_t d = 0; d < x.size(); ++d) s += (x[d] - y[d]) * (x[d] - y[d]);
        return std::sqrt(s);
    };
    double ab = 0.0, aa = 0.0, bb = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = n; j < idx.size(); ++j) ab += dist(i, j);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) aa += dist(i, j);
    for (std::size_t i = n; i < idx.size(); ++i)
        for (std::size_t j = i + 1; j < idx.size(); ++j) bb += dist(i, j);
    const double dn = static_cast<double>(n), dm = static_cast<double>(m);
    const double e = 2.0 * ab / (dn * dm) - 2.0 * aa / (dn * dn) - 2.0 * bb / (dm * dm);
    return dn * dm / (dn + dm) * e;
}

}  // namespace detail

struct EnergyResult {
    double statistic = 0.0;
    double p_value = 1.0;
};

/// Permutation-calibrated energy-distance two-sample test (O(n^2) per
/// permutation; meant for modest sample sizes).
inline EnergyResult energy_two_sample(const std::vector<Vec>& a, const std::vector<Vec>& b,
                                      std::size_t n_perm, std::uint64_t seed) {
    if (a.empty() || b.empty()) throw std::invalid_argument("energy: empty sample");
    std::vector<Vec> pool = a;
    pool.insert(pool.end(), b.begin(), b.end());
    std::vector<std::size_t> idx(pool.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    const double obs = detail::energy_statistic(pool, idx, a.size());
    Rng rng(seed);
    std::size_t ge = 0;
    for (std::size_t k = 0; k < n_perm; ++k) {
        for (std::size_t i = idx.size(); i-- > 1;)
            std::swap(idx[i], idx[rng.integer(i + 1)]);
        if (detail::energy_statistic(pool, idx, a.size()) >= obs) ++ge;
    }
    return {obs, static_cast<double>(ge + 1) / static_cast<double>(n_perm + 1)};
}

// ---------------------------------------------------------------------------
// Median bias and Wilson interval
// ---------------------------------------------------------------------------

/// Per axis: (1/2 - min over s in {-1,1} of empirical fraction of
/// s*(W - target) >= 0)_+, closed inequalities on both sides.
inline std::vector<double> median_bias(const EmpiricalDistribution& dist,
                                       const Vec& target = {}) {
    dist.validate();
    const std::size_t p = dist.dim();
    if (!target.empty() && target.size() != p)
        throw std::invalid_argument("median_bias: target dimension mismatch");
    std::vector<double> out(p);
    const double n = static_cast<double>(dist.size());
    for (std::size_t d = 0; d < p; ++d) {
        const double t = target.empty() ? 0.0 : target[d];
        std::size_t ge = 0, le = 0;
        for (const auto& s : dist.samples) {
            if (s[d] >= t) ++ge;
            if (s[d] <= t) ++le;
        }
        const double frac = std::min(ge, le) / n;
        out[d] = std::max(0.0, 0.5 - frac);
    }
    return out;
}

inline double median_bias_1d(const std::vector<double>& samples, double target = 0.0) {
    EmpiricalDistribution d;
    for (double s : samples) d.samples.push_back({s});
    return median_bias(d, {target})[0];
}

struct WilsonInterval {
    double lower = 0.0;
    double upper = 1.0;
};

inline WilsonInterval wilson_interval(std::size_t successes, std::size_t n, double z = 1.959963984540054) {
    if (n == 0) throw std::invalid_argument("wilson_interval: n = 0");
    const double nn = static_cast<double>(n);
    const double phat = static_cast<double>(successes) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double center = (phat + z2 / (2.0 * nn)) / denom;
    const double half = z * std::sqrt(phat * (1.0 - phat) / nn + z2 / (4.0 * nn * nn)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

inline double quantile(std::vector<double> xs, double q) {
    if (xs.empty()) throw std::invalid_argument("quantile: empty");
    std::sort(xs.begin(), xs.end());
    const double pos = q * static_cast<double>(xs.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= xs.size()) return xs.back();
    const double frac = pos - static_cast<double>(lo);
    return xs[lo] * (1.0 - frac) + xs[lo + 1] * frac;
}

// ---------------------------------------------------------------------------
// Symmetry test: H0: W =d= -W via two independent batches
// ---------------------------------------------------------------------------

enum class SymmetryMode { central, sign };

struct SymmetryVerdict {
    double statistic = 0.0;
    double p_value = 1.0;
    SymmetryMode mode = SymmetryMode::central;
    std::size_t n_per_batch = 0;

    bool rejects(double level) const { return p_value < level; }
};

/// Compares dist_a against negated dist_b (central mode negates the whole
/// vector; sign mode tests each coordinate's marginal sign-flip). 1-D: exact
/// two-sample KS. p > 1: per-axis KS Bonferroni combined with a permutation
/// energy-distance test, Bonferroni over the two procedures. The batches must
/// come from disjoint seed ranges.
inline SymmetryVerdict symmetry_test(const EmpiricalDistribution& dist_a,
                                     const EmpiricalDistribution& dist_b,
                                     SymmetryMode mode = SymmetryMode::central,
                                     std::size_t n_perm = 1000,
                                     std::uint64_t perm_seed = 0x5e1f) {
    dist_a.validate();
    dist_b.validate();
    if (dist_a.dim() != dist_b.dim())
        throw std::invalid_argument("symmetry_test: dimension mismatch");
    if (dist_a.seed_overlap(dist_b))
        throw std::invalid_argument("symmetry_test: batches share seed range (not independent)");
    const std::size_t p = dist_a.dim();
    SymmetryVerdict v;
    v.mode = mode;
    v.n_per_batch = std::min(dist_a.size(), dist_b.size());
    if (p == 1) {
        std::vector<double> b = dist_b.axis(0);
        for (auto& x : b) x = -x;
        const KsResult ks = ks_two_sample(dist_a.axis(0), b);
        v.statistic = ks.statistic;
        v.p_value = ks.p_value;
        return v;
    }
    // Marginal KS per axis with Bonferroni. Both modes negate marginally; the
    // central mode additionally runs the joint energy test on fully negated b.
    double max_ks = 0.0, min_p = 1.0;
    for (std::size_t d = 0; d < p; ++d) {
        std::vector<double> b = dist_b.axis(d);
        for (auto& x : b) x = -x;
        const KsResult ks = ks_two_sample(dist_a.axis(d), b);
        max_ks = std::max(max_ks, ks.statistic);
        min_p = std::min(min_p, ks.p_value);
    }
    const double p_ks = std::min(1.0, min_p * static_cast<double>(p));
    if (mode == SymmetryMode::sign) {
        v.statistic = max_ks;
        v.p_value = p_ks;
        return v;
    }
    std::vector<Vec> neg_b = dist_b.samples;
    for (auto& s : neg_b) s = negate(s);
    const EnergyResult en = energy_two_sample(dist_a.samples, neg_b, n_perm, perm_seed);
    v.statistic = max_ks + en.statistic;
    v.p_value = std::min(1.0, 2.0 * std::min(p_ks, en.p_value));
    return v;
}

}  // namespace argmin
