#pragma once

#include "glmb/gibbs.hpp"

namespace glmb {

struct SmootherConfig {
    int window = 5;            // N
    int cap_requested = 1000;  // H_k: hypotheses retained per scan
    int cap_pre_gibbs = 10;    // H_bar_k: hypotheses refined by windowed Gibbs
    int samples_filter = 50;   // total extension sweeps, split across hypotheses by weight
    int samples_gibbs = 100;   // T: samples per refined hypothesis
    uint64_t seed = 0;
    bool enable_sweeps = true;  // false: pure filter (extension + truncation only)
    int threads = 1;
};

// Truncated GLMB posterior at one scan: hypotheses sorted by descending
// weight, with normalized weights summing to 1.
struct PosteriorBank {
    int scan = 0;
    std::vector<Hypothesis> hypotheses;
    std::vector<double> weights;
};

struct StepDiagnostics {
    int hypothesis_count = 0;
    double ess = 0.0;
    double seconds = 0.0;
};

// Bank at scan 0: the single empty history with weight 1.
PosteriorBank initial_bank();

// Extends the hypothesis with a sampled association map for the next scan
// (single-scan Gibbs over the Eq.-16 factor weight, t_h chained sweeps),
// deduplicated. Output weights are input weight plus the exact factor weight.
std::vector<Hypothesis> sample_factors(const Hypothesis& hypothesis, int t_h, const ModelSet& models,
                                       const Measurements& meas, TrajectoryCache& cache,
                                       uint64_t stream_seed);

// One smoothing-while-filtering step: extend every hypothesis, dedup, then
// (when k >= N and sweeps are enabled) refine the best cap_pre_gibbs
// hypotheses with windowed Gibbs, pool, dedup, truncate, normalize.
PosteriorBank step(const PosteriorBank& bank, const SmootherConfig& config, const ModelSet& models,
                   const Measurements& meas, TrajectoryCache& cache,
                   StepDiagnostics* diag = nullptr);

struct TrackEstimate {
    Label label;
    int start_scan = 0;
    std::vector<Vec4> means;  // RTS-smoothed, one per live scan
};

struct Estimate {
    int cardinality = 0;  // labels live at the bank's scan
    std::vector<TrackEstimate> tracks;
};

// Best-hypothesis estimator with RTS-smoothed track means.
Estimate extract_estimate(const PosteriorBank& bank, const MotionModel& motion);

}  // namespace glmb
