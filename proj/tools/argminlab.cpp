#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "argmin/experiment.hpp"

int main(int argc, char** argv) {
    CLI::App app{"argmin laboratory: seeded experiments on limiting argmin distributions"};
    app.require_subcommand(1);

    std::string config_path, out_dir, report_dir;
    int workers = 1;
    if (const char* env = std::getenv("ARGMINLAB_WORKERS")) workers = std::atoi(env);

    auto* run = app.add_subcommand("run", "run an experiment config");
    run->add_option("config", config_path, "JSON experiment config")->required();
    run->add_option("--out", out_dir, "output directory (overrides config)");
    run->add_option("--workers", workers, "worker thread count");

    auto* report = app.add_subcommand("report", "summarize run directories");
    report->add_option("dir", report_dir, "directory containing runs")->required();

    auto* presets = app.add_subcommand("list-presets", "list preset names");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*run) {
            const argmin::RunResult r = argmin::run_experiment_file(config_path, out_dir, workers);
            std::cout << "wrote " << r.out_dir << "\n" << r.verdict.dump(2) << "\n";
            return r.exit_code;
        }
        if (*report) {
            const argmin::Report rep = argmin::report_runs(report_dir);
            std::cout << rep.text;
            std::ofstream csv(report_dir + "/report.csv", std::ios::binary);
            csv << rep.csv;
            return rep.exit_code;
        }
        if (*presets) {
            std::cout << "drift:";
            for (const auto& n : argmin::drift_preset_names()) std::cout << " " << n;
            std::cout << "\npart:";
            for (const auto& n : argmin::part_preset_names()) std::cout << " " << n;
            std::cout << "\ncone:";
            for (const auto& n : argmin::cone_preset_names()) std::cout << " " << n;
            std::cout << "\nscenario:";
            for (const auto& n : argmin::scenario_names()) std::cout << " " << n;
            std::cout << "\n";
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
