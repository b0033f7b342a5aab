#pragma once

#include <cstdint>
#include <iosfwd>

#include "glmb/trajectory.hpp"

namespace glmb {

// One simulated object: born at birth_scan from the given birth component,
// alive on scans [birth_scan, death_scan - 1].
struct SpawnEntry {
    int birth_scan = 1;
    int death_scan = 2;
    int component = 1;
};

struct Scenario {
    int duration = 100;
    std::vector<SpawnEntry> spawns;
    ModelSet models;
    uint64_t seed = 0;
};

// The 12-object scenario: births at scans 1, 20 and 50 (four each, one per
// corner site), dying at 10, 40 and 90, over 100 scans.
Scenario default_scenario(uint64_t seed);

struct Dataset {
    std::vector<LabeledStateSet> truth;  // indexed by scan, [0..duration]
    Measurements measurements;           // indexed by scan, [0..duration]
};

// Truth propagates by the motion model with process noise from the birth
// component prior; detections Bernoulli(P_D) with noise R, clutter
// Poisson(rate) uniform over the region, order shuffled. Deterministic in
// the scenario seed.
Dataset generate(const Scenario& scenario);

void write_dataset(std::ostream& os, const Dataset& data);
Dataset read_dataset(std::istream& is);

}  // namespace glmb
