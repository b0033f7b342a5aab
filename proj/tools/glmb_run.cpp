#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "glmb/experiment.hpp"

int main(int argc, char** argv) {
    CLI::App app{"moving-window GLMB smoother experiments"};

    std::string config_path, out_dir = "out", export_path, replay_path;
    std::vector<std::string> mode_names;
    int runs = 1, workers = 1;
    uint64_t seed = 0;

    app.add_option("--config", config_path, "flat key = value config file");
    app.add_option("--mode", mode_names, "tracker mode: filter or smoother:N (repeatable)");
    app.add_option("--runs", runs, "Monte Carlo runs")->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "base RNG seed");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--workers", workers, "concurrent runs")->check(CLI::PositiveNumber);
    app.add_option("--export-dataset", export_path, "write the first run's dataset here");
    app.add_option("--replay", replay_path, "replay an exported dataset instead of simulating");
    CLI11_PARSE(app, argc, argv);

    glmb::ExperimentConfig cfg;
    cfg.scenario = glmb::default_scenario(seed);
    try {
        if (!config_path.empty()) glmb::apply_config_file(cfg, config_path);
        if (app.count("--runs")) cfg.runs = runs;
        if (app.count("--seed")) cfg.seed = seed;
        if (app.count("--out")) cfg.out_dir = out_dir;
        if (app.count("--workers")) cfg.workers = workers;
        cfg.export_dataset_path = export_path;
        cfg.replay_path = replay_path;
        for (const auto& m : mode_names) cfg.modes.push_back(glmb::parse_mode(m));
        return glmb::run_experiment(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
