// rill CLI: runs prequential experiments from a JSON config.
//
//   rill run --config experiment.json            one model
//   rill run --suite --config experiment.json    full roster + suite.csv
//   rill version

#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "rill/rill.hpp"

int main(int argc, char** argv) {
    CLI::App app{"rill: online learning experiments on data streams"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "Run an experiment described by a config file");
    std::string config_path;
    bool suite = false;
    run->add_option("--config", config_path, "Path to the experiment JSON config")->required();
    run->add_flag("--suite", suite, "Run the full model roster and write suite.csv");

    auto* version = app.add_subcommand("version", "Print the version and exit");

    CLI11_PARSE(app, argc, argv);

    if (version->parsed()) {
        std::cout << "rill " << rill::kVersion << "\n";
        return 0;
    }

    try {
        const rill::ExperimentConfig cfg = rill::parse_config(config_path);
        if (suite) {
            const auto results = rill::run_suite(cfg, &std::cerr);
            std::cout << "wrote " << results.size() << " reports and suite.csv to "
                      << cfg.output_dir << "\n";
        } else {
            const auto result = rill::run_experiment(cfg);
            std::cout << "wrote " << result.report_path.string() << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
