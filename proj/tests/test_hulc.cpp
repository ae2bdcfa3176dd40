#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include "argmin/finite_n.hpp"
#include "argmin/hulc.hpp"
#include "argmin/presets.hpp"

using namespace argmin;

TEST_CASE("batch count formula") {
    REQUIRE(hulc_batch_count(0.05) == 6);
    REQUIRE(hulc_batch_count(0.10) == 5);
    REQUIRE(hulc_batch_count(0.32) == 3);
    REQUIRE(hulc_batch_count(0.01) == 8);
    // Nonincreasing as alpha grows.
    std::size_t prev = hulc_batch_count(0.001);
    for (double a : {0.005, 0.01, 0.05, 0.1, 0.2, 0.5}) {
        const std::size_t b = hulc_batch_count(a);
        REQUIRE(b <= prev);
        prev = b;
    }
    REQUIRE_THROWS_AS(hulc_batch_count(0.0), std::invalid_argument);
    REQUIRE_THROWS_AS(hulc_batch_count(1.0), std::invalid_argument);
}

TEST_CASE("partition: disjoint cover with near-equal sizes, seed-stable") {
    const auto batches = hulc_partition(100, 6, 42);
    REQUIRE(batches.size() == 6);
    std::vector<char> seen(100, 0);
    for (std::size_t b = 0; b < 6; ++b) {
        REQUIRE(batches[b].size() == (b < 4 ? 17u : 16u));  // 100 = 4*17 + 2*16
        for (std::size_t i : batches[b]) {
            REQUIRE(i < 100);
            REQUIRE(!seen[i]);
            seen[i] = 1;
        }
    }
    REQUIRE(std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; }));

    REQUIRE(hulc_partition(100, 6, 42) == batches);
    REQUIRE(hulc_partition(100, 6, 43) != batches);
    REQUIRE_THROWS_AS(hulc_partition(3, 6, 1), std::invalid_argument);
}

TEST_CASE("interval is the hull of the batch estimates") {
    Dataset d;
    Rng rng(9);
    for (int i = 0; i < 120; ++i) d.rows.push_back({rng.normal()});
    auto mean_fit = [](const Dataset& s) {
        double m = 0.0;
        for (const auto& r : s.rows) m += r[0];
        return m / static_cast<double>(s.n());
    };
    const HulCInterval iv = hulc_interval(d, mean_fit, 0.05, 7);
    REQUIRE(iv.B == 6);
    REQUIRE(iv.batch_estimates.size() == 6);
    REQUIRE(iv.lower == *std::min_element(iv.batch_estimates.begin(), iv.batch_estimates.end()));
    REQUIRE(iv.upper == *std::max_element(iv.batch_estimates.begin(), iv.batch_estimates.end()));
    REQUIRE(iv.width() >= 0.0);
    REQUIRE(iv.contains(iv.batch_estimates[3]));

    // Same data and seed reproduce the interval exactly.
    const HulCInterval again = hulc_interval(d, mean_fit, 0.05, 7);
    REQUIRE(again.lower == iv.lower);
    REQUIRE(again.upper == iv.upper);

    // A constant estimator collapses the interval to a point.
    const HulCInterval flat = hulc_interval(d, [](const Dataset&) { return 3.25; }, 0.05, 7);
    REQUIRE(flat.lower == 3.25);
    REQUIRE(flat.upper == 3.25);

    // Hull over a prefix of batch estimates widens monotonically.
    double lo = iv.batch_estimates[0], hi = iv.batch_estimates[0];
    double prev_width = 0.0;
    for (double e : iv.batch_estimates) {
        lo = std::min(lo, e);
        hi = std::max(hi, e);
        REQUIRE(hi - lo >= prev_width);
        prev_width = hi - lo;
    }
    REQUIRE(lo == iv.lower);
    REQUIRE(hi == iv.upper);
}

TEST_CASE("coverage of the sample mean is near nominal at desk scale") {
    const CoverageReport rep =
        coverage_experiment(sample_mean_scenario(), 0.05, 600, 800, 12345, 3);
    REQUIRE(rep.B == 6);
    REQUIRE(rep.coverage > 0.90);
    REQUIRE(rep.coverage <= 1.0);
    REQUIRE(rep.wilson.lower <= rep.coverage);
    REQUIRE(rep.wilson.upper >= rep.coverage);
    REQUIRE(rep.batch_median_bias < 0.06);

    // Worker count must not change the verdict (index-keyed seeding).
    const CoverageReport rep1 =
        coverage_experiment(sample_mean_scenario(), 0.05, 600, 800, 12345, 1);
    REQUIRE(rep1.coverage == rep.coverage);
    REQUIRE(rep1.batch_median_bias == rep.batch_median_bias);
}

TEST_CASE("finite-n comparison: constrained mean approaches its limit law") {
    const EstimatorScenario s = scenario_by_id("constrained_mean");
    const FiniteNReport rep = finite_n_bridge(s, {50, 400}, 2000, 777, 3, 4000);
    REQUIRE(rep.rows.size() == 2);
    REQUIRE(rep.rows[0].n == 50);
    // The limit max(N(0,1), 0) is median-unbiased; so is the estimator.
    REQUIRE(rep.limit_median_bias < 0.02);
    REQUIRE(rep.rows[1].median_bias < 0.03);
    REQUIRE(rep.rows[1].ks_to_limit < 0.05);
    REQUIRE(rep.rows[1].ks_p_value > 0.001);
    REQUIRE(rep.bias_approaches_limit);
}

TEST_CASE("finite-n comparison: penalized estimator keeps its median bias") {
    const EstimatorScenario s = scenario_by_id("bridge");
    const FiniteNReport rep = finite_n_bridge(s, {200, 1000}, 1500, 778, 3, 4000);
    // The limit N(-0.5, 1) has median bias Phi(0.5) - 0.5 = 0.1915 around 0.
    REQUIRE(rep.limit_median_bias == Catch::Approx(0.1915).margin(0.03));
    REQUIRE(rep.rows[1].median_bias == Catch::Approx(0.1915).margin(0.05));
    REQUIRE(rep.rows[1].ks_to_limit < 0.06);
    REQUIRE(rep.bias_approaches_limit);
}
