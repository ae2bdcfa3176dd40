#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "argmin/estimators.hpp"
#include "argmin/rng.hpp"
#include "argmin/stats.hpp"
#include "argmin/util.hpp"

namespace argmin {

struct FiniteNRow {
    std::size_t n = 0;
    double median_bias = 0.0;
    double ks_to_limit = 0.0;
    double ks_p_value = 1.0;
};

struct FiniteNReport {
    std::string estimator_id;
    double limit_median_bias = 0.0;
    std::vector<FiniteNRow> rows;
    std::vector<double> limit_draws;
    std::vector<std::vector<double>> scaled_draws;  // per sample size
    bool bias_approaches_limit = false;
};

/// For each n: the empirical law of rate(n) * (fit - theta0) over n_mc fresh
/// datasets, its median bias, and the KS distance to the registered limit law.
inline FiniteNReport finite_n_bridge(const EstimatorScenario& scenario,
                                     const std::vector<std::size_t>& sample_sizes,
                                     std::size_t n_mc, std::uint64_t master_seed,
                                     int workers = 1, std::size_t n_limit_draws = 0) {
    if (sample_sizes.empty()) throw std::invalid_argument("finite_n_bridge: no sample sizes");
    FiniteNReport rep;
    rep.estimator_id = scenario.id;
    if (n_limit_draws == 0) n_limit_draws = n_mc;
    rep.limit_draws = scenario.limit_sampler(n_limit_draws, derive_seed(master_seed, 0), workers);
    rep.limit_median_bias = median_bias_1d(rep.limit_draws);

    for (std::size_t k = 0; k < sample_sizes.size(); ++k) {
        const std::size_t n = sample_sizes[k];
        const std::uint64_t size_seed = derive_seed(master_seed, k + 1);
        std::vector<double> draws(n_mc);
        parallel_for(n_mc, workers, [&](std::size_t i) {
            const Dataset data = scenario.generate(n, derive_seed(size_seed, i));
            draws[i] = scenario.rate(static_cast<double>(n)) *
                       (scenario.fit(data) - scenario.theta0);
        });
        FiniteNRow row;
        row.n = n;
        row.median_bias = median_bias_1d(draws);
        const KsResult ks = ks_two_sample(draws, rep.limit_draws);
        row.ks_to_limit = ks.statistic;
        row.ks_p_value = ks.p_value;
        rep.rows.push_back(row);
        rep.scaled_draws.push_back(std::move(draws));
    }

    // Distance of the finite-n median bias to the limit value should not grow
    // from the smallest to the largest n (one MC s.e. of slack).
    const double se = std::sqrt(0.25 / static_cast<double>(n_mc));
    const double first = std::abs(rep.rows.front().median_bias - rep.limit_median_bias);
    const double last = std::abs(rep.rows.back().median_bias - rep.limit_median_bias);
    rep.bias_approaches_limit = last <= first + se;
    return rep;
}

}  // namespace argmin
