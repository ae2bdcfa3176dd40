#pragma once

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "argmin/argmin.hpp"
#include "argmin/finite_n.hpp"
#include "argmin/hulc.hpp"
#include "argmin/presets.hpp"
#include "argmin/stats.hpp"
#include "argmin/util.hpp"

namespace argmin {

struct RunResult {
    int exit_code = 0;  // 0 ok, 1 experiment-reject, 2 usage/validation error
    std::string out_dir;
    nlohmann::json verdict;
};

namespace detail {

class ArtifactWriter {
  public:
    explicit ArtifactWriter(std::filesystem::path dir) : dir_(std::move(dir)) {
        std::filesystem::create_directories(dir_);
    }

    void write(const std::string& name, const std::string& body) {
        std::ofstream os(dir_ / name, std::ios::binary);
        if (!os) throw std::runtime_error("cannot write " + (dir_ / name).string());
        os << body;
        written_.push_back(name);
        checksums_[name] = hex64(fnv1a(body));
    }

    void remove_all_written() {
        for (const auto& name : written_) {
            std::error_code ec;
            std::filesystem::remove(dir_ / name, ec);
        }
    }

    const std::map<std::string, std::string>& checksums() const { return checksums_; }
    const std::filesystem::path& dir() const { return dir_; }

  private:
    std::filesystem::path dir_;
    std::vector<std::string> written_;
    std::map<std::string, std::string> checksums_;
};

inline std::string dist_csv(const EmpiricalDistribution& dist) {
    std::ostringstream os;
    dist.write_csv(os);
    return os.str();
}

inline void require(const nlohmann::json& j, const char* field, const char* path) {
    if (!j.contains(field))
        throw std::invalid_argument(std::string("config: missing field '") + path + field + "'");
}

}  // namespace detail

/// Runs one experiment config. Artifacts: results.csv (plus batch_b.csv for
/// symmetry tests), verdict.json, manifest.json. Identical config + seed give
/// byte-identical CSV and verdict bodies at any worker count.
inline RunResult run_experiment(const nlohmann::json& config, const std::string& out_override = "",
                                int workers = 1) {
    using nlohmann::json;
    detail::require(config, "kind", "");
    detail::require(config, "seed", "");
    const std::string kind = config.at("kind").get<std::string>();
    const std::uint64_t seed = config.at("seed").get<std::uint64_t>();
    const double level = config.value("level", 0.01);

    std::string out_dir = out_override;
    if (out_dir.empty()) out_dir = config.value("out", "run_" + kind);

    const auto t0 = std::chrono::steady_clock::now();
    detail::ArtifactWriter art(out_dir);
    json verdict;
    bool reject = false;

    try {
        if (kind == "argmin_distribution" || kind == "symmetry_test" || kind == "necessity_probe") {
            for (const char* f : {"drift", "part", "cone", "grid", "n_replicates"})
                detail::require(config, f, "");
            const DriftSpec drift = drift_from_json(config.at("drift"));
            const StochasticPartSpec part = part_from_json(config.at("part"));
            const PolyhedralCone cone = cone_from_json(config.at("cone"));
            const GridDomain grid = grid_from_json(config.at("grid"));
            const std::size_t n = config.at("n_replicates").get<std::size_t>();
            if (kind != "argmin_distribution" && !grid.symmetric())
                throw std::invalid_argument("config: grid must be symmetric for '" + kind + "'");

            if (kind == "argmin_distribution") {
                const EmpiricalDistribution dist =
                    argmin_distribution(drift, part, cone, grid, n, seed, 0, workers);
                art.write("results.csv", detail::dist_csv(dist));
                verdict = {{"kind", kind},
                           {"n_replicates", n},
                           {"tie_fraction", dist.tie_fraction()},
                           {"boundary_fraction", dist.boundary_fraction()},
                           {"boundary_warning", dist.boundary_fraction() > 0.001}};
            } else if (kind == "symmetry_test") {
                ArgminEngine engine(drift, part, cone, grid);
                const EmpiricalDistribution a = engine.distribution(n, seed, 0, workers);
                const EmpiricalDistribution b = engine.distribution(n, seed, n, workers);
                const SymmetryVerdict sv = symmetry_test(a, b);
                reject = sv.rejects(level);
                art.write("results.csv", detail::dist_csv(a));
                art.write("batch_b.csv", detail::dist_csv(b));
                verdict = {{"kind", kind},
                           {"statistic", sv.statistic},
                           {"p_value", sv.p_value},
                           {"level", level},
                           {"reject", reject},
                           {"n_per_batch", sv.n_per_batch}};
            } else {  // necessity_probe
                const auto* y_law = std::get_if<ClassISpec>(&part);
                if (!y_law)
                    throw std::invalid_argument("config: necessity_probe needs a class1 part");
                const NecessityReport rep =
                    necessity_probe_1d(drift, cone, *y_law, grid, n, seed, workers, level);
                reject = rep.symmetry.rejects(level);
                art.write("results.csv", detail::dist_csv(rep.w_samples));
                verdict = {{"kind", kind},
                           {"a1_even", rep.a1_verdict.exact_even()},
                           {"symmetry_p_value", rep.symmetry.p_value},
                           {"symmetry_reject", reject},
                           {"w_median_bias", rep.w_median_bias},
                           {"y_median_bias", rep.y_median_bias},
                           {"zero_in_cone", rep.zero_in_cone},
                           {"consistent_with_necessity", rep.consistent_with_necessity},
                           {"w_median_unbiased_within_3se", rep.w_median_unbiased_within_3se},
                           {"three_se", rep.three_se}};
            }
        } else if (kind == "finite_n_bridge") {
            for (const char* f : {"estimator", "sample_sizes", "n_mc"})
                detail::require(config, f, "");
            const EstimatorScenario sc = scenario_by_id(config.at("estimator").get<std::string>());
            const auto sizes = config.at("sample_sizes").get<std::vector<std::size_t>>();
            const std::size_t n_mc = config.at("n_mc").get<std::size_t>();
            const FiniteNReport rep = finite_n_bridge(sc, sizes, n_mc, seed, workers);
            std::ostringstream os;
            os << "n,median_bias,ks_to_limit,ks_p_value\n";
            for (const auto& row : rep.rows)
                os << row.n << "," << format_double(row.median_bias) << ","
                   << format_double(row.ks_to_limit) << "," << format_double(row.ks_p_value)
                   << "\n";
            art.write("results.csv", os.str());
            verdict = {{"kind", kind},
                       {"estimator", rep.estimator_id},
                       {"limit_median_bias", rep.limit_median_bias},
                       {"bias_approaches_limit", rep.bias_approaches_limit},
                       {"final_ks", rep.rows.back().ks_to_limit}};
        } else if (kind == "coverage") {
            for (const char* f : {"estimator", "alpha", "n", "n_mc"})
                detail::require(config, f, "");
            const EstimatorScenario sc = scenario_by_id(config.at("estimator").get<std::string>());
            const CoverageReport rep =
                coverage_experiment(sc, config.at("alpha").get<double>(),
                                    config.at("n").get<std::size_t>(),
                                    config.at("n_mc").get<std::size_t>(), seed, workers);
            std::ostringstream os;
            os << "scenario,n,alpha,coverage,wilson_lo,wilson_hi,med_bias_hat\n";
            os << rep.scenario << "," << rep.n << "," << format_double(rep.alpha) << ","
               << format_double(rep.coverage) << "," << format_double(rep.wilson.lower) << ","
               << format_double(rep.wilson.upper) << "," << format_double(rep.batch_median_bias)
               << "\n";
            art.write("results.csv", os.str());
            verdict = {{"kind", kind},
                       {"scenario", rep.scenario},
                       {"coverage", rep.coverage},
                       {"wilson_lo", rep.wilson.lower},
                       {"wilson_hi", rep.wilson.upper},
                       {"B", rep.B},
                       {"batch_median_bias", rep.batch_median_bias}};
        } else if (kind == "escape_demo") {
            for (const char* f : {"drift", "cone", "part", "radii", "half", "n_replicates"})
                detail::require(config, f, "");
            const DriftSpec drift = drift_from_json(config.at("drift"));
            const StochasticPartSpec part = part_from_json(config.at("part"));
            const auto* y_law = std::get_if<ClassISpec>(&part);
            if (!y_law) throw std::invalid_argument("config: escape_demo needs a class1 part");
            const PolyhedralCone cone = cone_from_json(config.at("cone"));
            const EscapeReport rep = sublinear_escape_demo(
                drift, cone, *y_law, config.at("radii").get<std::vector<double>>(),
                config.at("half").get<std::size_t>(),
                config.at("n_replicates").get<std::size_t>(), seed, workers,
                config.value("floor", 0.05));
            std::ostringstream os;
            os << "radius,escape_fraction\n";
            for (std::size_t k = 0; k < rep.radii.size(); ++k)
                os << format_double(rep.radii[k]) << ","
                   << format_double(rep.escape_fractions[k]) << "\n";
            art.write("results.csv", os.str());
            verdict = {{"kind", kind},
                       {"escape_fractions", rep.escape_fractions},
                       {"stable_away_from_zero", rep.stable_away_from_zero},
                       {"vanishing", rep.vanishing}};
        } else {
            throw std::invalid_argument("config: unknown kind '" + kind + "'");
        }

        art.write("verdict.json", verdict.dump(2) + "\n");

        const auto wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                 std::chrono::steady_clock::now() - t0)
                                 .count();
        json manifest = {{"version", kVersion},
                         {"kind", kind},
                         {"seed", seed},
                         {"config_hash", hex64(fnv1a(config.dump()))},
                         {"reject", reject},
                         {"wall_ms", wall_ms},
                         {"files", art.checksums()}};
        {
            std::ofstream os(std::filesystem::path(out_dir) / "manifest.json", std::ios::binary);
            os << manifest.dump(2) << "\n";
        }
    } catch (...) {
        art.remove_all_written();
        throw;
    }

    RunResult r;
    r.exit_code = reject ? 1 : 0;
    r.out_dir = out_dir;
    r.verdict = verdict;
    return r;
}

inline RunResult run_experiment_file(const std::string& config_path,
                                     const std::string& out_override = "", int workers = 1) {
    std::ifstream is(config_path);
    if (!is) throw std::invalid_argument("config: cannot open " + config_path);
    nlohmann::json config;
    try {
        is >> config;
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("config: parse error: ") + e.what());
    }
    return run_experiment(config, out_override, workers);
}

struct ReportRow {
    std::string dir;
    std::string kind;
    std::string seed;
    bool reject = false;
    bool checksum_ok = true;
    std::string summary;
};

struct Report {
    std::vector<ReportRow> rows;
    int exit_code = 0;
    std::string text;
    std::string csv;
};

/// Consolidates every run directory under `dir` (including `dir` itself):
/// verifies artifact checksums against the manifest and tabulates verdicts.
inline Report report_runs(const std::string& dir) {
    namespace fs = std::filesystem;
    Report rep;
    std::vector<fs::path> run_dirs;
    const fs::path root(dir);
    if (fs::exists(root / "manifest.json")) run_dirs.push_back(root);
    if (fs::is_directory(root))
        for (const auto& e : fs::directory_iterator(root))
            if (e.is_directory() && fs::exists(e.path() / "manifest.json"))
                run_dirs.push_back(e.path());
    std::sort(run_dirs.begin(), run_dirs.end());

    if (run_dirs.empty()) {
        rep.text = "no runs found in " + dir + "\n";
        rep.csv = "dir,kind,seed,reject,checksum_ok,summary\n";
        return rep;
    }

    std::ostringstream text, csv;
    csv << "dir,kind,seed,reject,checksum_ok,summary\n";
    for (const auto& rd : run_dirs) {
        ReportRow row;
        row.dir = rd.string();
        nlohmann::json manifest;
        try {
            std::ifstream is(rd / "manifest.json");
            is >> manifest;
            row.kind = manifest.at("kind").get<std::string>();
            row.seed = std::to_string(manifest.at("seed").get<std::uint64_t>());
            row.reject = manifest.value("reject", false);
            for (const auto& [name, sum] : manifest.at("files").items()) {
                std::ifstream f(rd / name, std::ios::binary);
                std::stringstream body;
                body << f.rdbuf();
                if (!f || hex64(fnv1a(body.str())) != sum.get<std::string>())
                    row.checksum_ok = false;
            }
        } catch (const std::exception& e) {
            throw std::runtime_error("corrupt manifest in " + rd.string() + ": " + e.what());
        }
        try {
            std::ifstream is(rd / "verdict.json");
            nlohmann::json v;
            is >> v;
            std::ostringstream s;
            if (v.contains("p_value")) s << "p=" << v.at("p_value").get<double>() << " ";
            if (v.contains("symmetry_p_value"))
                s << "p=" << v.at("symmetry_p_value").get<double>() << " ";
            if (v.contains("coverage")) s << "coverage=" << v.at("coverage").get<double>() << " ";
            if (v.contains("final_ks")) s << "ks=" << v.at("final_ks").get<double>() << " ";
            if (v.contains("w_median_bias"))
                s << "mb=" << v.at("w_median_bias").get<double>() << " ";
            row.summary = s.str();
        } catch (...) {
            row.summary = "(no verdict)";
        }
        if (row.reject || !row.checksum_ok) rep.exit_code = 1;
        text << row.dir << "  kind=" << row.kind << "  seed=" << row.seed
             << "  reject=" << (row.reject ? "yes" : "no")
             << "  checksums=" << (row.checksum_ok ? "ok" : "MISMATCH") << "  " << row.summary
             << "\n";
        csv << row.dir << "," << row.kind << "," << row.seed << "," << (row.reject ? 1 : 0) << ","
            << (row.checksum_ok ? 1 : 0) << "," << row.summary << "\n";
        rep.rows.push_back(std::move(row));
    }
    rep.text = text.str();
    rep.csv = csv.str();
    return rep;
}

}  // namespace argmin
