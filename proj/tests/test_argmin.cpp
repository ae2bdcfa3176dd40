#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <map>
#include <sstream>

#include "argmin/argmin.hpp"

using namespace argmin;

namespace {

EmpiricalDistribution make_dist(const std::vector<Vec>& samples, std::uint64_t seed,
                                std::uint64_t first, std::uint64_t last) {
    EmpiricalDistribution d;
    d.samples = samples;
    d.master_seed = seed;
    d.first_replicate = first;
    d.last_replicate = last;
    return d;
}

std::vector<Vec> normal_draws(std::size_t n, std::uint64_t seed, double shift = 0.0,
                              std::size_t dim = 1) {
    std::vector<Vec> out;
    Rng rng(seed);
    for (std::size_t i = 0; i < n; ++i) {
        Vec v(dim);
        for (auto& c : v) c = rng.normal() + shift;
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace

TEST_CASE("composed minimization: closed-form cases") {
    const GridDomain g = GridDomain::symmetric_1d(4.0, 80);
    const DriftSpec quad = DriftSpec::quadratic_identity(1);

    // u^2 - 2u on R minimized at u = 1 (linear part fixed at y = -2).
    const ArgminReplicate r1 = compose_and_minimize(quad, ClassISpec::fixed({-2.0}),
                                                    PolyhedralCone::full_space(1), g, 10);
    REQUIRE(r1.minimizer[0] == Catch::Approx(1.0));
    REQUIRE(r1.min_value == Catch::Approx(-1.0));
    REQUIRE(!r1.boundary_hit);

    // u^2 + u constrained to u >= 0 is minimized at the cone vertex.
    const ArgminReplicate r2 = compose_and_minimize(quad, ClassISpec::fixed({1.0}),
                                                    PolyhedralCone::half_line_nonneg(), g, 11);
    REQUIRE(r2.minimizer[0] == 0.0);
    REQUIRE(r2.min_value == 0.0);

    // Cone that misses the grid entirely.
    const PolyhedralCone off(1, {{1.0}, {-1.0}}, {{1.0}});  // only {0}, then shift grid away
    const GridDomain away = GridDomain::linspace(1.0, 2.0, 5);
    REQUIRE_THROWS_AS(ArgminEngine(quad, ClassISpec::fixed({0.0}), off, away),
                      std::invalid_argument);
}

TEST_CASE("engine agrees bit-for-bit with an independent scan") {
    Rng meta(2024);
    for (int trial = 0; trial < 60; ++trial) {
        const double radius = 1.0 + meta.uniform(0.0, 3.0);
        const std::size_t half = 5 + meta.integer(20);
        const GridDomain g = GridDomain::symmetric_1d(radius, half);
        const double c = 0.25 + meta.uniform(0.0, 2.0);
        const DriftSpec drift = DriftSpec::quadratic({{c}});
        const double sd = 0.5 + meta.uniform(0.0, 1.5);
        const int cone_kind = static_cast<int>(meta.integer(2));
        const PolyhedralCone cone =
            cone_kind == 0 ? PolyhedralCone::full_space(1) : PolyhedralCone::half_line_nonneg();
        const std::uint64_t seed = meta.engine()();

        const ArgminReplicate rep = compose_and_minimize(
            drift, ClassISpec::gaussian(1, sd), cone, g, seed);

        // Oracle: regenerate y the way the sampler derives it, then scan with
        // hand-written drift and membership.
        Rng rng(derive_seed(seed, 0));
        const double y = rng.normal(0.0, sd);
        double best = kInf;
        std::vector<double> zs(g.size(), kInf);
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double u = g.node(i)[0];
            if (cone_kind == 1 && u < 0.0) continue;
            zs[i] = c * u * u + u * y + 0.0;
            best = std::min(best, zs[i]);
        }
        REQUIRE(rep.min_value == best);  // bit-exact
        const double tol = 1e-12 * (1.0 + std::abs(best));
        REQUIRE(zs[g.index_of(rep.minimizer)] <= best + tol);
    }
}

TEST_CASE("total ties are broken uniformly at random") {
    const GridDomain g = GridDomain::symmetric_1d(2.0, 4);  // 9 nodes
    const DriftSpec zero = DriftSpec::quadratic({{0.0}});
    ArgminEngine engine(zero, ClassISpec::fixed({0.0}), PolyhedralCone::full_space(1), g);

    std::map<double, int> counts;
    const std::size_t n = 9000;
    for (std::size_t i = 0; i < n; ++i) {
        const ArgminReplicate r = engine.replicate(derive_seed(31, i));
        REQUIRE(r.tie_count == 9);
        REQUIRE(r.tie_broken);
        counts[r.minimizer[0]] += 1;
    }
    REQUIRE(counts.size() == 9);
    for (const auto& [u, c] : counts) {
        REQUIRE(c > 700);
        REQUIRE(c < 1300);
    }
}

TEST_CASE("negating an even-drift path negates the minimizer exactly") {
    const GridDomain g = GridDomain::symmetric_1d(3.0, 60);
    const std::vector<double> drift = DriftSpec::quadratic_identity(1).on_grid(g);
    const std::vector<double> ind = indicator(PolyhedralCone::full_space(1), g).values();
    Rng rng(505);
    for (int t = 0; t < 300; ++t) {
        const double y = rng.normal();
        SamplePath pos(g.size()), neg(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) {
            pos[i] = g.node(i)[0] * y;
            neg[i] = g.node(i)[0] * -y;
        }
        const ArgminReplicate a = minimize_tabulated(g, drift, pos, ind, 1);
        const ArgminReplicate b = minimize_tabulated(g, drift, neg, ind, 1);
        if (a.tie_count == 1 && b.tie_count == 1)
            REQUIRE(b.flat_index == g.reflect(a.flat_index));
    }
}

TEST_CASE("median bias: exact small cases and closed inequalities") {
    REQUIRE(median_bias_1d({-1.0, 0.0, 1.0}) == 0.0);
    REQUIRE(median_bias_1d({1.0, 2.0, 3.0}) == Catch::Approx(0.5));
    REQUIRE(median_bias_1d({1.0, 2.0, 3.0}, 2.0) == 0.0);
    // Half the mass exactly at the target counts on both sides.
    REQUIRE(median_bias_1d({0.0, 0.0, 1.0, 2.0}) == 0.0);
    EmpiricalDistribution d;
    d.samples = {{1.0, -1.0}, {2.0, -2.0}, {3.0, -3.0}};
    const auto mb = median_bias(d, {2.0, 0.0});
    REQUIRE(mb[0] == 0.0);
    REQUIRE(mb[1] == Catch::Approx(0.5));
}

TEST_CASE("two-sample machinery sanity") {
    const auto a = normal_draws(500, 1);
    std::vector<double> a1(500), b1(500);
    for (std::size_t i = 0; i < 500; ++i) a1[i] = a[i][0];
    const auto b = normal_draws(500, 2);
    for (std::size_t i = 0; i < 500; ++i) b1[i] = b[i][0];
    REQUIRE(ks_two_sample(a1, a1).statistic == 0.0);
    REQUIRE(ks_two_sample(a1, b1).p_value > 0.01);
    REQUIRE(kolmogorov_sf(1.358) == Catch::Approx(0.05).margin(0.002));

    const WilsonInterval w = wilson_interval(500, 1000);
    REQUIRE(w.lower == Catch::Approx(0.469).margin(0.002));
    REQUIRE(w.upper == Catch::Approx(0.531).margin(0.002));
    REQUIRE(quantile({1.0, 2.0, 3.0, 4.0}, 0.5) == Catch::Approx(2.5));
}

TEST_CASE("symmetry test: null acceptance, shift rejection, seed hygiene") {
    const auto a = make_dist(normal_draws(1200, 7), 7, 0, 1200);
    const auto b = make_dist(normal_draws(1200, 8), 8, 0, 1200);
    REQUIRE(symmetry_test(a, b).p_value > 0.01);

    const auto shifted = make_dist(normal_draws(1200, 9, 0.6), 9, 0, 1200);
    REQUIRE(symmetry_test(a, shifted).rejects(0.01));

    // Overlapping replicate ranges are refused.
    const auto overlap = make_dist(normal_draws(1200, 7), 7, 600, 1800);
    REQUIRE_THROWS_AS(symmetry_test(a, overlap), std::invalid_argument);
    // Same master seed but disjoint ranges is fine.
    const auto disjoint = make_dist(normal_draws(1200, 10), 7, 1200, 2400);
    REQUIRE_NOTHROW(symmetry_test(a, disjoint));
}

TEST_CASE("symmetry test in 2-D: marginal KS plus energy distance") {
    const auto a = make_dist(normal_draws(150, 21, 0.0, 2), 21, 0, 150);
    const auto b = make_dist(normal_draws(150, 22, 0.0, 2), 22, 0, 150);
    const SymmetryVerdict ok = symmetry_test(a, b);
    REQUIRE(ok.p_value > 0.01);
    REQUIRE(symmetry_test(a, b, SymmetryMode::sign).p_value > 0.01);

    auto moved = normal_draws(150, 23, 0.0, 2);
    for (auto& v : moved) v[0] += 0.9;
    const auto c = make_dist(moved, 23, 0, 150);
    REQUIRE(symmetry_test(a, c).rejects(0.01));
    REQUIRE(symmetry_test(a, c, SymmetryMode::sign).rejects(0.01));
}

TEST_CASE("constrained-vertex fixture matches the censored-normal law") {
    // Z(u) = u^2 - 2uY on u >= 0 has argmin max(Y, 0).
    const GridDomain g = GridDomain::symmetric_1d(6.0, 300);
    const DriftSpec quad = DriftSpec::quadratic_identity(1);
    ArgminEngine engine(quad, ClassISpec::gaussian(1, 1.0, -2.0),
                        PolyhedralCone::half_line_nonneg(), g);
    const std::size_t n = 20000;
    const EmpiricalDistribution dist = engine.distribution(n, 314, 0, 3);

    std::vector<double> w = dist.axis(0), oracle(n);
    Rng rng(2718);
    for (auto& x : oracle) x = std::max(rng.normal(), 0.0);
    REQUIRE(ks_two_sample(w, oracle).statistic < 0.02);

    // About half of the mass sits exactly on the cone vertex.
    std::size_t at_zero = 0;
    for (double x : w) at_zero += (x == 0.0);
    REQUIRE(std::abs(static_cast<double>(at_zero) / n - 0.5) < 0.02);
    REQUIRE(median_bias_1d(w) < 3.0 * std::sqrt(0.25 / n));
    REQUIRE(dist.boundary_fraction() < 1e-3);
}

TEST_CASE("penalized-drift fixture is a shifted normal") {
    // Z(u) = u^2 - 2uY + u has argmin W = Y - 1/2 exactly.
    const GridDomain g = GridDomain::symmetric_1d(6.0, 300);
    const DriftSpec drift = DriftSpec::bridge_1d(1.0, 1.0, 2.0, 1.0);
    ArgminEngine engine(drift, ClassISpec::gaussian(1, 1.0, -2.0),
                        PolyhedralCone::full_space(1), g);
    const std::size_t n = 20000;
    const EmpiricalDistribution dist = engine.distribution(n, 99, 0, 2);
    const std::vector<double> w = dist.axis(0);
    double mean = 0.0;
    for (double x : w) mean += x;
    mean /= n;
    REQUIRE(mean == Catch::Approx(-0.5).margin(4.0 / std::sqrt(static_cast<double>(n))));
    REQUIRE(median_bias_1d(w, -0.5) < 0.02);
    REQUIRE(median_bias_1d(w, 0.0) > 0.15);  // clearly median-biased around 0
}

TEST_CASE("necessity probe on the three standing examples") {
    const GridDomain g = GridDomain::symmetric_1d(4.0, 80);
    const DriftSpec quad = DriftSpec::quadratic_identity(1);
    const ClassISpec y = ClassISpec::gaussian(1, 1.0);

    // Symmetric drift, full space: even, no rejection, median-unbiased.
    const NecessityReport even =
        necessity_probe_1d(quad, PolyhedralCone::full_space(1), y, g, 2500, 41);
    REQUIRE(even.a1_verdict.exact_even());
    REQUIRE(!even.symmetry.rejects(0.01));
    REQUIRE(even.w_median_unbiased_within_3se);
    REQUIRE(!even.consistent_with_necessity);

    // Half-line cone: evenness fails and the symmetry test agrees, yet the
    // argmin stays median-unbiased (the cone vertex carries half the mass).
    const NecessityReport vertex =
        necessity_probe_1d(quad, PolyhedralCone::half_line_nonneg(), y, g, 2500, 42);
    REQUIRE(!vertex.a1_verdict.exact_even());
    REQUIRE(vertex.symmetry.rejects(0.01));
    REQUIRE(vertex.consistent_with_necessity);
    REQUIRE(vertex.zero_in_cone);
    REQUIRE(vertex.w_median_unbiased_within_3se);
    REQUIRE(vertex.y_median_bias < 0.02);

    // Tilted drift: evenness fails and median bias actually appears.
    const DriftSpec tilted = DriftSpec::mode(0.8, true);
    const NecessityReport biased =
        necessity_probe_1d(tilted, PolyhedralCone::full_space(1), y, g, 2500, 43);
    REQUIRE(!biased.a1_verdict.exact_even());
    REQUIRE(biased.symmetry.rejects(0.01));
    REQUIRE(!biased.w_median_unbiased_within_3se);
}

TEST_CASE("sublinear drift leaks to the boundary, quadratic does not") {
    const ClassISpec y = ClassISpec::gaussian(1, 2.0);
    const DriftSpec av = DriftSpec::lad_limit(0.0, {{1.0, {1.0}}});
    const EscapeReport leak = sublinear_escape_demo(av, PolyhedralCone::full_space(1), y,
                                                    {10.0, 50.0}, 50, 1500, 61);
    REQUIRE(leak.stable_away_from_zero);
    REQUIRE(!leak.vanishing);
    // |u| + uY escapes whenever |Y| > 1: fraction about 2*Phi(-1/2).
    for (double f : leak.escape_fractions) REQUIRE(f == Catch::Approx(0.617).margin(0.05));

    const DriftSpec quad = DriftSpec::quadratic_identity(1);
    const EscapeReport tight = sublinear_escape_demo(quad, PolyhedralCone::full_space(1), y,
                                                     {10.0, 50.0}, 50, 1500, 62);
    REQUIRE(tight.vanishing);
    REQUIRE(!tight.stable_away_from_zero);
}

TEST_CASE("replicate csv carries diagnostics and full precision") {
    EmpiricalDistribution d;
    d.samples = {{0.1 + 0.2}, {-1.0}};
    d.min_values = {-0.5, 0.25};
    d.tie_counts = {1, 3};
    d.boundary_hits = {0, 1};
    std::ostringstream os;
    d.write_csv(os);
    const std::string text = os.str();
    REQUIRE(text.rfind("w_1,min_value,tie_count,boundary_hit\n", 0) == 0);
    REQUIRE(text.find("0.30000000000000004") != std::string::npos);
    REQUIRE(text.find(",3,1\n") != std::string::npos);
}
