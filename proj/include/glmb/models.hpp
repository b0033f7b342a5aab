#pragma once

#include <vector>

#include "glmb/gaussian.hpp"

namespace glmb {

struct MotionModel {
    Mat4 F = Mat4::Identity();
    Mat4 Q = Mat4::Zero();
    double p_survive = 0.95;
};

struct BirthComponent {
    int index = 1;  // iota of the labels this site produces
    double r_birth = 0.03;
    Vec4 mean = Vec4::Zero();
    Mat4 cov = Mat4::Zero();
};

struct BirthModel {
    std::vector<BirthComponent> components;
    const BirthComponent& component_for(int iota) const;
};

struct SensorModel {
    Mat24 H = Mat24::Zero();
    Mat2 R = Mat2::Zero();
    double p_detect = 0.3;
    double clutter_rate = 3.0;
    // axis-aligned clutter region [x_lo, x_hi] x [y_lo, y_hi]
    double region[4] = {-1000.0, 1000.0, -1000.0, 1000.0};

    double region_area() const {
        return (region[1] - region[0]) * (region[3] - region[2]);
    }
    double clutter_density() const { return clutter_rate / region_area(); }
    double log_clutter_density() const { return std::log(clutter_density()); }
};

struct ModelSet {
    MotionModel motion;
    BirthModel birth;
    SensorModel sensor;
};

// Log of the marginalized detection ratio for measurement index i against a
// Gaussian state density: i = 0 gives log(1 - P_D), i > 0 gives
// log( P_D * N(z_i; H m, H P H' + R) / kappa ). Throws on i out of range.
double log_psi_marginal(const SensorModel& sensor, const std::vector<Vec2>& measurements,
                        int i, const Gaussian& density);

// Scenario models: constant-velocity motion (Delta = 1 s, sigma_a = 1 m/s^2),
// P_S = 0.95, four corner birth sites with r = 0.03, position-only sensor with
// R = diag(30^2), P_D = 0.3, Poisson clutter rate 3 on [-1000,1000]^2.
ModelSet default_scenario_models();

}  // namespace glmb
