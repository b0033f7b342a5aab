#include "glmb/hypothesis.hpp"

namespace glmb {

Hypothesis make_hypothesis(AssociationHistory gamma, const ModelSet& models,
                           const Measurements& meas, TrajectoryCache& cache) {
    Hypothesis h;
    h.gamma = std::move(gamma);
    double total = 0.0;
    for (const auto& ell : h.gamma.ever_live_labels()) {
        TrajPtr tip = build_chain(h.gamma, ell, h.gamma.last_scan(), models, meas, cache);
        total += tip->log_total;
        h.trajectories.emplace(ell, tip);
    }
    for (int j = 1; j <= h.gamma.last_scan(); ++j)
        for (const auto& [l, a] : h.gamma.maps[static_cast<size_t>(j)].entries)
            if (l.s == j && a < 0) total += not_born_weight(models.birth.component_for(l.iota));
    h.log_weight = total;
    return h;
}

}  // namespace glmb
