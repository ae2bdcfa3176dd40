#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "argmin/processes.hpp"

using namespace argmin;

TEST_CASE("bridge directional term: the three branches at mu = 1") {
    // mu > 1: a |b|^{mu-1} sgn(b).
    REQUIRE(h_mu(2.0, -3.0, 2.0) == Catch::Approx(-6.0));
    REQUIRE(h_mu(2.0, 3.0, 3.0) == Catch::Approx(18.0));
    REQUIRE(h_mu(2.0, 0.0, 2.0) == 0.0);
    // mu = 1: a sgn(b) off zero, |a| at zero.
    REQUIRE(h_mu(2.0, -3.0, 1.0) == Catch::Approx(-2.0));
    REQUIRE(h_mu(-2.0, 0.0, 1.0) == Catch::Approx(2.0));
    REQUIRE(h_mu(2.0, 0.0, 1.0) == Catch::Approx(2.0));
    // mu < 1: |a|^mu at zero, 0 elsewhere.
    REQUIRE(h_mu(4.0, 0.0, 0.5) == Catch::Approx(2.0));
    REQUIRE(h_mu(4.0, 1.0, 0.5) == 0.0);
    REQUIRE(h_mu(-4.0, 0.0, 0.5) == Catch::Approx(2.0));
}

TEST_CASE("drift catalog: values, D(0)=0 gate, nonnegativity gate") {
    const GridDomain g = GridDomain::symmetric_1d(2.0, 4);

    const DriftSpec quad = DriftSpec::quadratic_identity(1);
    REQUIRE(quad({1.5}) == Catch::Approx(2.25));

    const DriftSpec lad = DriftSpec::lad_limit(0.0, {{1.0, {1.0}}});
    REQUIRE(lad({-1.5}) == Catch::Approx(1.5));  // gamma = 0 gives |u|

    const DriftSpec lad2 = DriftSpec::lad_limit(1.0, {{2.0, {1.0}}});
    REQUIRE(lad2({3.0}) == Catch::Approx(9.0));  // 2 * 3^2 / 2

    // Bridge with mu = 2, theta0 = 1: u^2 + lambda0 * u (signed, not nonneg).
    const DriftSpec br = DriftSpec::bridge_1d(1.0, 1.0, 2.0, 1.0);
    REQUIRE(br({-0.5}) == Catch::Approx(-0.25));
    REQUIRE(br({2.0}) == Catch::Approx(6.0));
    REQUIRE_NOTHROW(br.on_grid(g));  // negative values allowed here

    const DriftSpec md = DriftSpec::mode(0.5, true);
    REQUIRE(md({1.0}) == Catch::Approx(0.5));
    const DriftSpec md0 = DriftSpec::mode(0.5, false);
    REQUIRE(md0({1.0}) == Catch::Approx(1.0));

    // D(0) != 0 is rejected at construction.
    const GridFunction shifted = GridFunction::tabulate(g, [](const Vec& u) { return u[0] + 1.0; });
    REQUIRE_THROWS_AS(DriftSpec::custom(shifted), std::invalid_argument);

    // Quadratic drift asserts nonnegativity on tabulation.
    const DriftSpec neg = DriftSpec::quadratic({{-1.0}});
    REQUIRE_THROWS_AS(neg.on_grid(g), std::logic_error);
}

TEST_CASE("linear-part sampler: exact linearity and determinism") {
    const GridDomain g = GridDomain::symmetric_1d(2.0, 4);
    const auto [path, y] = sample_class1_with_y(ClassISpec::gaussian(1, 1.0), g, 77);
    for (std::size_t i = 0; i < g.size(); ++i)
        REQUIRE(path[i] == Catch::Approx(g.node(i)[0] * y[0]).margin(1e-15));
    const SamplePath again = sample_class1(ClassISpec::gaussian(1, 1.0), g, 77);
    REQUIRE(again == path);
    const SamplePath other = sample_class1(ClassISpec::gaussian(1, 1.0), g, 78);
    REQUIRE(other != path);

    const SamplePath fixed = sample_class1(ClassISpec::fixed({2.0}), g, 0);
    REQUIRE(fixed[g.size() - 1] == Catch::Approx(4.0));
}

TEST_CASE("gaussian-part sampler: exact zero at origin, variance, determinism") {
    const GridDomain g = GridDomain::symmetric_1d(2.0, 8);
    const Class2Sampler sampler(ClassIISpec::brownian_two_sided(1.0), g);
    const std::size_t mid = g.index_of({0.0});

    const SamplePath p1 = sampler.sample(5);
    REQUIRE(p1 == sampler.sample(5));
    REQUIRE(std::abs(p1[mid]) < 1e-7);

    // Var at u should be |u| (Brownian); check at u = 2 by MC.
    const std::size_t at = g.index_of({2.0});
    double m = 0.0, m2 = 0.0;
    const std::size_t n = 4000;
    for (std::size_t k = 0; k < n; ++k) {
        const double v = sampler.sample(1000 + k)[at];
        m += v;
        m2 += v * v;
    }
    m /= n;
    m2 = m2 / n - m * m;
    REQUIRE(std::abs(m) < 0.1);
    REQUIRE(m2 == Catch::Approx(2.0).margin(0.25));
}

TEST_CASE("gaussian kernel from jump atoms matches the two-sided Brownian form") {
    // One atom (w=1, y=1, s=1) at gamma = 2 collapses to 2*min(|u|,|v|)1{uv>0}.
    const ClassIISpec pf = ClassIISpec::pflug(2.0, {{1.0, 1.0, {1.0}}});
    const ClassIISpec bb = ClassIISpec::brownian_two_sided(2.0);
    for (double u : {-1.5, -0.5, 0.0, 0.7, 2.0})
        for (double v : {-2.0, -0.7, 0.0, 0.5, 1.5})
            REQUIRE(pf.kernel({u}, {v}) == Catch::Approx(bb.kernel({u}, {v})).margin(1e-12));
    // And it is an even kernel, exactly.
    const GridDomain g = GridDomain::symmetric_1d(2.0, 6);
    REQUIRE(check_evenness(pf, g).exact_even());
    REQUIRE(check_evenness(bb, g).exact_even());
}

TEST_CASE("non-even and non-PSD kernels are called out") {
    const GridDomain g = GridDomain::symmetric_1d(1.0, 3);
    // Rank-one kernel (u+1)(v+1): PSD but not even.
    const ClassIISpec shifted = ClassIISpec::custom(
        [](const Vec& u, const Vec& v) { return (u[0] + 1.0) * (v[0] + 1.0); }, "shifted");
    REQUIRE(check_evenness(shifted, g).kind == EvennessVerdict::Kind::not_even);
    REQUIRE_NOTHROW(Class2Sampler(shifted, g));

    const ClassIISpec bad = ClassIISpec::custom(
        [](const Vec& u, const Vec& v) { return (u[0] == v[0]) ? -1.0 : 0.0; }, "negdiag");
    REQUIRE_THROWS_AS(Class2Sampler(bad, g), std::runtime_error);
}

TEST_CASE("poisson-part sampler: centering table, moments, horizon") {
    const GridDomain g = GridDomain::symmetric_1d(2.0, 8);
    // Deterministic atom (V=2, U=1) at rate gamma=1.5: value at node w is
    // 2 * Poisson(1.5 w_+), so mean 3 w_+ and variance 6 w_+.
    const ClassIIISpec spec = ClassIIISpec::point_mass(1.5, 2.0, {1.0});
    Class3Sampler sampler(spec, g, 1000);
    REQUIRE(sampler.horizon() == Catch::Approx(1.1 * 2.0));

    const auto& mt = sampler.mean_table();
    for (std::size_t i = 0; i < g.size(); ++i)
        REQUIRE(mt[i] == Catch::Approx(3.0 * std::max(g.node(i)[0], 0.0)).margin(1e-9));

    REQUIRE(sampler.sample(3, true) == sampler.sample(3, true));

    const std::size_t at = g.index_of({2.0});
    const std::size_t neg = g.index_of({-2.0});
    double m = 0.0, m2 = 0.0;
    const std::size_t n = 20000;
    for (std::size_t k = 0; k < n; ++k) {
        const SamplePath p = sampler.sample(500 + k, true);
        REQUIRE(p[neg] == Catch::Approx(0.0).margin(1e-12));  // no jumps on the negative side
        m += p[at];
        m2 += p[at] * p[at];
    }
    m /= n;
    m2 /= n;
    // Mean 0 within 4 s.e., variance 6*2 = 12 (loose).
    REQUIRE(std::abs(m) < 4.0 * std::sqrt(12.0 / n));
    REQUIRE(m2 == Catch::Approx(12.0).margin(1.0));

    // An explicit horizon below the required truncation is refused.
    ClassIIISpec tight = spec;
    tight.horizon_override = 1.0;
    REQUIRE_THROWS_AS(Class3Sampler(tight, g), std::invalid_argument);
    ClassIIISpec ok = spec;
    ok.horizon_override = 5.0;
    REQUIRE(Class3Sampler(ok, g).horizon() == Catch::Approx(5.0));
}

TEST_CASE("even-ness: exact check for drift plus cone") {
    const GridDomain g = GridDomain::symmetric_1d(2.0, 4);
    const DriftSpec quad = DriftSpec::quadratic_identity(1);
    REQUIRE(check_evenness(quad, PolyhedralCone::full_space(1), g).exact_even());
    REQUIRE(check_evenness(quad, PolyhedralCone::half_line_nonneg(), g).kind ==
            EvennessVerdict::Kind::not_even);
    const DriftSpec md = DriftSpec::mode(0.5, true);  // linear term breaks evenness
    REQUIRE(check_evenness(md, PolyhedralCone::full_space(1), g).kind ==
            EvennessVerdict::Kind::not_even);
    REQUIRE_THROWS_AS(check_evenness(quad, PolyhedralCone::full_space(1),
                                     GridDomain::linspace(0.0, 1.0, 5)),
                      std::invalid_argument);
}

TEST_CASE("even-ness: statistical checks give p-values, not proofs") {
    const GridDomain g = GridDomain::symmetric_1d(2.0, 6);

    const EvennessVerdict sym = check_evenness(ClassISpec::gaussian(1, 1.0), g, 1500, 901);
    REQUIRE(sym.kind == EvennessVerdict::Kind::statistical);
    REQUIRE(sym.p_value > 0.01);

    const EvennessVerdict skew = check_evenness(ClassISpec::centered_poisson(1, 1.0), g, 1500, 902);
    REQUIRE(skew.p_value < 0.01);

    const ClassIIISpec paired = ClassIIISpec::paired_atoms(1.0, {{1.0, 1.0, Vec{1.0}}});
    const EvennessVerdict pv = check_evenness(paired, g, 800, 903);
    REQUIRE(pv.kind == EvennessVerdict::Kind::statistical);
    REQUIRE(pv.p_value > 0.01);

    const ClassIIISpec oneside = ClassIIISpec::point_mass(1.0, 1.0, {1.0});
    REQUIRE(check_evenness(oneside, g, 800, 904).p_value < 0.01);
}
