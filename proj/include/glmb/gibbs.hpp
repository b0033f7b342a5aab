#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <set>

#include "glmb/hypothesis.hpp"

namespace glmb {

struct GibbsConfig {
    int window = 5;            // N: scans refined per sweep
    int samples = 1;           // T: samples produced per input hypothesis
    uint64_t rng_seed = 0;
    bool chained = true;       // successive chain states vs. independent one-sweep samples
    int threads = 1;           // parallel sample generation (independent mode only)
};

// Unnormalized conditional over alpha = -1..M_j for one (scan, label) site.
struct ConditionalTable {
    std::vector<int> support;
    std::vector<double> log_scores;
};

// Validity factor of assigning alpha when the label's next-scan value is beta
// and `used` holds the positive values taken by the other labels at this scan.
int m_factor(int alpha, int beta, const std::set<int>& used);

// Product of association-weight factors over scans j..min(k, t+1) with
// gamma_j(ell) replaced by alpha: the weight impact of the change propagated
// through the label's remaining lifetime.
double eta_jn(const AssociationHistory& gamma, const Label& ell, int j, int alpha,
              const ModelSet& models, const Measurements& meas, TrajectoryCache& cache);

// Gibbs conditional at site (j, ell): a point mass at -1 when ell is outside
// the candidate domain, otherwise eta_jn * m_factor per alpha. At the final
// scan there is no future constraint, so death is always admissible.
ConditionalTable conditional(const AssociationHistory& gamma, int j, const Label& ell,
                             const ModelSet& models, const Measurements& meas,
                             TrajectoryCache& cache);

// One systematic-scan pass over gamma.maps[j]. tips_in maps labels live at
// j-1 to their chain tips at j-1; tips_out (if given) receives the tips at j
// of the labels live after the pass.
void sweep_scan(AssociationHistory& gamma, int j, const std::map<Label, TrajPtr>& tips_in,
                std::map<Label, TrajPtr>* tips_out, const ModelSet& models,
                const Measurements& meas, TrajectoryCache& cache, std::mt19937_64& rng);

// Windowed multi-scan Gibbs: T samples obtained by sweeping scans
// max(1, k-N+1)..k. Maps before the window are never modified.
std::vector<Hypothesis> sweep_window(const Hypothesis& hypothesis, int k, const GibbsConfig& config,
                                     const ModelSet& models, const Measurements& meas,
                                     TrajectoryCache& cache);

}  // namespace glmb
