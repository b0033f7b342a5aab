#pragma once

#include <map>

#include "glmb/trajectory.hpp"

namespace glmb {

// One GLMB component: an association history, its unnormalized log weight,
// and the trajectory posterior chain of every label ever born under it.
// Equality and ordering are by the history alone; the weight and trajectories
// are functions of it.
struct Hypothesis {
    AssociationHistory gamma;
    double log_weight = 0.0;
    std::map<Label, TrajPtr> trajectories;

    bool operator==(const Hypothesis& o) const { return gamma == o.gamma; }
};

// Recomputes weight and trajectory table from the history.
Hypothesis make_hypothesis(AssociationHistory gamma, const ModelSet& models,
                           const Measurements& meas, TrajectoryCache& cache);

}  // namespace glmb
