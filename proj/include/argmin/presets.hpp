#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "argmin/argmin.hpp"
#include "argmin/cones.hpp"
#include "argmin/estimators.hpp"
#include "argmin/grid.hpp"
#include "argmin/processes.hpp"

namespace argmin {

inline constexpr const char* kVersion = "0.1.0";

/// Sample-mean reference scenario (exactly median-unbiased batches); used by
/// the coverage experiments alongside the estimator registry.
inline EstimatorScenario sample_mean_scenario() {
    EstimatorScenario s;
    s.id = "sample_mean";
    s.description = "unconstrained mean of N(0,1) data";
    s.theta0 = 0.0;
    s.generate = [](std::size_t n, std::uint64_t seed) {
        Dataset d;
        d.label = "gaussian_mean";
        d.seed = seed;
        Rng rng(seed);
        for (std::size_t i = 0; i < n; ++i) d.rows.push_back({rng.normal()});
        return d;
    };
    s.fit = [](const Dataset& d) {
        double m = 0.0;
        for (const auto& r : d.rows) m += r[0];
        return m / static_cast<double>(d.n());
    };
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
    return s;
}

inline EstimatorScenario scenario_by_id(const std::string& id) {
    if (id == "sample_mean") return sample_mean_scenario();
    auto reg = estimator_registry();
    auto it = reg.find(id);
    if (it == reg.end()) throw std::invalid_argument("unknown estimator scenario: " + id);
    return it->second;
}

inline std::vector<std::string> scenario_names() {
    std::vector<std::string> out;
    for (const auto& [id, s] : estimator_registry()) out.push_back(id);
    out.push_back("sample_mean");
    return out;
}

// ---------------------------------------------------------------------------
// JSON-configurable presets for drift / stochastic part / cone / grid
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<Vec> json_matrix(const nlohmann::json& j) {
    std::vector<Vec> m;
    for (const auto& row : j) m.push_back(row.get<Vec>());
    return m;
}

}  // namespace detail

inline std::vector<std::string> drift_preset_names() {
    return {"quadratic", "bridge", "mode", "lad_limit", "abs", "example7_pq"};
}

inline DriftSpec drift_from_json(const nlohmann::json& j) {
    const std::string preset = j.at("preset").get<std::string>();
    if (preset == "quadratic") {
        if (j.contains("matrix")) return DriftSpec::quadratic(detail::json_matrix(j.at("matrix")));
        const double c = j.value("coeff", 1.0);
        const std::size_t dim = j.value("dim", std::size_t{1});
        std::vector<Vec> q(dim, Vec(dim, 0.0));
        for (std::size_t i = 0; i < dim; ++i) q[i][i] = c;
        return DriftSpec::quadratic(std::move(q));
    }
    if (preset == "bridge") {
        std::vector<Vec> c;
        if (j.contains("matrix"))
            c = detail::json_matrix(j.at("matrix"));
        else
            c = {{j.value("c", 1.0)}};
        Vec theta0 = j.contains("theta0_vec") ? j.at("theta0_vec").get<Vec>()
                                              : Vec{j.value("theta0", 0.0)};
        return DriftSpec::bridge(std::move(c), j.at("lambda0").get<double>(),
                                 j.at("mu").get<double>(), std::move(theta0));
    }
    if (preset == "mode")
        return DriftSpec::mode(j.value("c0", 0.0), j.value("mu78", false));
    if (preset == "lad_limit") {
        std::vector<DriftSpec::LadItem> items;
        for (const auto& it : j.at("items")) {
            DriftSpec::LadItem li;
            li.weight = it.at(0).get<double>();
            for (std::size_t d = 1; d < it.size(); ++d) li.x.push_back(it.at(d).get<double>());
            items.push_back(std::move(li));
        }
        return DriftSpec::lad_limit(j.at("gamma").get<double>(), std::move(items));
    }
    if (preset == "abs")  // 1-D |u|: sublinear demo drift
        return DriftSpec::lad_limit(0.0, {{1.0, {1.0}}});
    if (preset == "example7_pq") {
        const double p = j.at("p").get<double>(), q = j.at("q").get<double>();
        const double jump = std::log(p / q);
        return DriftSpec::example7(
            [p, q, jump](Rng&) {
                return DriftSpec::Example7Draw{{1.0}, q - p, jump * (p + q)};
            },
            1, 1);
    }
    throw std::invalid_argument("drift: unknown preset '" + preset + "'");
}

inline std::vector<std::string> part_preset_names() {
    return {"class1_gaussian", "class1_fixed",     "class1_centered_poisson",
            "class2_brownian", "class2_pflug",     "class3_point_mass",
            "class3_paired",   "class3_mle_jump"};
}

inline StochasticPartSpec part_from_json(const nlohmann::json& j) {
    const std::string preset = j.at("preset").get<std::string>();
    if (preset == "class1_gaussian")
        return ClassISpec::gaussian(j.value("dim", std::size_t{1}), j.value("sd", 1.0),
                                    j.value("scale", 1.0));
    if (preset == "class1_fixed") return ClassISpec::fixed(j.at("y").get<Vec>());
    if (preset == "class1_centered_poisson")
        return ClassISpec::centered_poisson(j.value("dim", std::size_t{1}),
                                            j.at("lambda").get<double>(), j.value("scale", 1.0));
    if (preset == "class2_brownian") return ClassIISpec::brownian_two_sided(j.value("scale", 1.0));
    if (preset == "class2_pflug") {
        std::vector<PflugAtom> atoms;
        for (const auto& a : j.at("atoms")) {
            PflugAtom at;
            at.weight = a.at(0).get<double>();
            at.y = a.at(1).get<double>();
            for (std::size_t d = 2; d < a.size(); ++d) at.s.push_back(a.at(d).get<double>());
            atoms.push_back(std::move(at));
        }
        return ClassIISpec::pflug(j.at("gamma").get<double>(), std::move(atoms));
    }
    if (preset == "class3_point_mass")
        return ClassIIISpec::point_mass(j.at("gamma").get<double>(), j.at("v").get<double>(),
                                        j.at("u").get<Vec>());
    if (preset == "class3_paired") {
        std::vector<std::tuple<double, double, Vec>> atoms;
        for (const auto& a : j.at("atoms")) {
            Vec u;
            for (std::size_t d = 2; d < a.size(); ++d) u.push_back(a.at(d).get<double>());
            atoms.emplace_back(a.at(0).get<double>(), a.at(1).get<double>(), std::move(u));
        }
        return ClassIIISpec::paired_atoms(j.at("gamma").get<double>(), std::move(atoms));
    }
    if (preset == "class3_mle_jump") {
        const double p = j.at("p").get<double>(), q = j.at("q").get<double>();
        const double jump = std::log(p / q);
        return ClassIIISpec::custom(
            2.0, 1,
            [p, q, jump](Rng& rng) {
                return rng.uniform() < 0.5 ? std::make_pair(jump, Vec{p})
                                           : std::make_pair(-jump, Vec{-q});
            },
            "mle_jump_nu");
    }
    throw std::invalid_argument("part: unknown preset '" + preset + "'");
}

inline std::vector<std::string> cone_preset_names() {
    return {"full_space", "nonneg_half_line", "(inline: {dim, ineq, eq})"};
}

inline PolyhedralCone cone_from_json(const nlohmann::json& j) {
    if (j.contains("preset")) {
        const std::string preset = j.at("preset").get<std::string>();
        if (preset == "full_space")
            return PolyhedralCone::full_space(j.value("dim", std::size_t{1}));
        if (preset == "nonneg_half_line") return PolyhedralCone::half_line_nonneg();
        throw std::invalid_argument("cone: unknown preset '" + preset + "'");
    }
    return PolyhedralCone::from_json(j);
}

inline GridDomain grid_from_json(const nlohmann::json& j) {
    if (j.contains("axes")) {
        std::vector<std::vector<double>> axes;
        for (const auto& ax : j.at("axes")) axes.push_back(ax.get<std::vector<double>>());
        return GridDomain(std::move(axes));
    }
    return GridDomain::symmetric_box(j.at("radius").get<double>(),
                                     j.at("half").get<std::size_t>(),
                                     j.value("dim", std::size_t{1}));
}

}  // namespace argmin
