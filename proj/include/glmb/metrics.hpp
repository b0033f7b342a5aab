#pragma once

#include <map>

#include "glmb/gaussian.hpp"

namespace glmb {

struct OspaParams {
    double cutoff = 100.0;  // c, meters
    double order = 1.0;     // p >= 1
    int window = 10;        // scans, OSPA(2) only
};

struct OspaResult {
    double dist = 0.0;
    double loc = 0.0;
    double card = 0.0;
};

// Minimal total cost over permutations of a square cost matrix
// (Hungarian / shortest augmenting path, O(n^3)).
double min_cost_assignment(const Eigen::MatrixXd& cost);

// Optimal sub-pattern assignment distance between two point sets, with
// location / cardinality split.
OspaResult ospa(const std::vector<Vec2>& x, const std::vector<Vec2>& y, const OspaParams& params);

// A track as scan -> planar position over its lifespan.
using Track = std::map<int, Vec2>;

// OSPA over tracks with base distance the time-averaged per-scan distance on
// the window of `params.window` scans ending at k; scans where exactly one
// track exists charge the cutoff, scans where neither exists charge zero.
double ospa2(const std::vector<Track>& truth, const std::vector<Track>& est,
             const OspaParams& params, int k);

}  // namespace glmb
