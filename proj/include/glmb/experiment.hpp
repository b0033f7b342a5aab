#pragma once

#include <string>

#include "glmb/metrics.hpp"
#include "glmb/sim.hpp"
#include "glmb/smoother.hpp"

namespace glmb {

// Tracker variant: "filter" (extension + truncation only) or "smoother:N".
struct ModeSpec {
    std::string name = "filter";
    bool sweeps = false;
    int window = 1;
};

ModeSpec parse_mode(const std::string& text);

struct ExperimentConfig {
    Scenario scenario;
    SmootherConfig tracker;  // window/enable_sweeps overridden per mode
    OspaParams ospa;
    std::vector<ModeSpec> modes;
    int runs = 1;
    uint64_t seed = 0;
    std::string out_dir = "out";
    int workers = 1;
    std::string export_dataset_path;
    std::string replay_path;
    std::size_t cache_capacity = std::size_t{1} << 20;
};

// Flat key = value overrides ('#' comments). Throws on unreadable files or
// unknown keys.
void apply_config_file(ExperimentConfig& config, const std::string& path);

// Everything one tracker pass over one dataset produces. Vectors are indexed
// by scan (entry 0 unused).
struct RunResult {
    std::vector<double> ospa_dist, ospa_loc, ospa_card, ospa2;
    std::vector<int> card_true, card_est;
    std::vector<double> step_seconds;
    Estimate final_estimate;
    int invalid_hypotheses = 0;  // validate_history failures across all banks

    double time_averaged_ospa() const;
    double time_averaged_ospa2() const;
};

std::vector<Track> truth_tracks(const Dataset& data);
std::vector<Track> estimate_tracks(const Estimate& est);

RunResult run_tracker(const Dataset& data, const ModelSet& models, const SmootherConfig& config,
                      const OspaParams& ospa_params, std::size_t cache_capacity);

// Full orchestration: datasets, all modes over all Monte Carlo runs, CSV and
// SVG artifacts under config.out_dir. Returns a process exit status.
int run_experiment(const ExperimentConfig& config);

}  // namespace glmb
