#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "argmin/estimators.hpp"
#include "argmin/rng.hpp"
#include "argmin/stats.hpp"
#include "argmin/util.hpp"

namespace argmin {

/// B = ceil(log2(2 / alpha)) batches.
inline std::size_t hulc_batch_count(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("hulc: alpha in (0,1)");
    return static_cast<std::size_t>(std::ceil(std::log2(2.0 / alpha)));
}

struct HulCInterval {
    double lower = 0.0;
    double upper = 0.0;
    double alpha = 0.05;
    std::size_t B = 0;
    std::vector<double> batch_estimates;

    bool contains(double t) const { return lower <= t && t <= upper; }
    double width() const { return upper - lower; }
};

/// Seeded near-equal partition of {0,...,n-1} into B batches: shuffle, then
/// deal contiguous chunks; the first (n mod B) batches get one extra index.
inline std::vector<std::vector<std::size_t>> hulc_partition(std::size_t n, std::size_t B,
                                                            std::uint64_t seed) {
    if (n < B) throw std::invalid_argument("hulc: fewer observations than batches");
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    Rng rng(seed);
    for (std::size_t i = n; i-- > 1;) std::swap(idx[i], idx[rng.integer(i + 1)]);
    std::vector<std::vector<std::size_t>> batches(B);
    const std::size_t base = n / B, extra = n % B;
    std::size_t pos = 0;
    for (std::size_t b = 0; b < B; ++b) {
        const std::size_t len = base + (b < extra ? 1 : 0);
        batches[b].assign(idx.begin() + pos, idx.begin() + pos + len);
        pos += len;
    }
    return batches;
}

/// [min, max] of the B batch estimates on a seeded random partition.
inline HulCInterval hulc_interval(const Dataset& data,
                                  const std::function<double(const Dataset&)>& fit, double alpha,
                                  std::uint64_t seed) {
    data.validate();
    HulCInterval out;
    out.alpha = alpha;
    out.B = hulc_batch_count(alpha);
    const auto batches = hulc_partition(data.n(), out.B, seed);
    for (const auto& b : batches) {
        Dataset sub;
        sub.label = data.label;
        sub.seed = data.seed;
        for (std::size_t i : b) sub.rows.push_back(data.rows[i]);
        out.batch_estimates.push_back(fit(sub));
    }
    out.lower = *std::min_element(out.batch_estimates.begin(), out.batch_estimates.end());
    out.upper = *std::max_element(out.batch_estimates.begin(), out.batch_estimates.end());
    return out;
}

struct CoverageReport {
    std::string scenario;
    double alpha = 0.05;
    std::size_t n = 0;
    std::size_t n_mc = 0;
    std::size_t B = 0;
    double coverage = 0.0;
    WilsonInterval wilson;
    double batch_median_bias = 0.0;  // median bias of the size-(n/B) batch estimator
};

/// Fraction of replications whose HulC interval covers theta0, with a Wilson
/// band, alongside the median bias of the batch-level estimator.
inline CoverageReport coverage_experiment(const EstimatorScenario& scenario, double alpha,
                                          std::size_t n, std::size_t n_mc,
                                          std::uint64_t master_seed, int workers = 1) {
    CoverageReport rep;
    rep.scenario = scenario.id;
    rep.alpha = alpha;
    rep.n = n;
    rep.n_mc = n_mc;
    rep.B = hulc_batch_count(alpha);
    std::vector<char> covered(n_mc, 0);
    std::vector<double> batch_est(n_mc, 0.0);
    parallel_for(n_mc, workers, [&](std::size_t i) {
        const Dataset data = scenario.generate(n, derive_seed(master_seed, 2 * i));
        const HulCInterval iv =
            hulc_interval(data, scenario.fit, alpha, derive_seed(master_seed, 2 * i + 1));
        covered[i] = iv.contains(scenario.theta0) ? 1 : 0;
        batch_est[i] = iv.batch_estimates[0];
    });
    std::size_t hits = 0;
    for (char c : covered) hits += (c != 0);
    rep.coverage = static_cast<double>(hits) / static_cast<double>(n_mc);
    rep.wilson = wilson_interval(hits, n_mc);
    rep.batch_median_bias = median_bias_1d(batch_est, scenario.theta0);
    return rep;
}

}  // namespace argmin
