#include "glmb/models.hpp"

#include <stdexcept>

namespace glmb {

const BirthComponent& BirthModel::component_for(int iota) const {
    for (const auto& c : components)
        if (c.index == iota) return c;
    throw std::invalid_argument("no birth component with index " + std::to_string(iota));
}

double log_psi_marginal(const SensorModel& sensor, const std::vector<Vec2>& measurements,
                        int i, const Gaussian& density) {
    if (i < 0 || i > static_cast<int>(measurements.size()))
        throw std::out_of_range("measurement index out of range");
    if (i == 0) return std::log1p(-sensor.p_detect);
    const Vec2& z = measurements[static_cast<size_t>(i - 1)];
    return std::log(sensor.p_detect) + kalman_log_likelihood(density, sensor.H, sensor.R, z) -
           sensor.log_clutter_density();
}

ModelSet default_scenario_models() {
    ModelSet m;

    const double dt = 1.0;
    const double sigma_a = 1.0;
    Eigen::Matrix2d f_blk, q_blk;
    f_blk << 1, dt, 0, 1;
    q_blk << dt * dt * dt * dt / 4.0, dt * dt * dt / 2.0, dt * dt * dt / 2.0, dt * dt;
    m.motion.F = Mat4::Zero();
    m.motion.Q = Mat4::Zero();
    m.motion.F.block<2, 2>(0, 0) = f_blk;
    m.motion.F.block<2, 2>(2, 2) = f_blk;
    m.motion.Q.block<2, 2>(0, 0) = sigma_a * sigma_a * q_blk;
    m.motion.Q.block<2, 2>(2, 2) = sigma_a * sigma_a * q_blk;
    m.motion.p_survive = 0.95;

    const double means[4][2] = {{500, 500}, {-500, 500}, {-500, -500}, {500, -500}};
    for (int i = 0; i < 4; ++i) {
        BirthComponent c;
        c.index = i + 1;
        c.r_birth = 0.03;
        c.mean << means[i][0], 0, means[i][1], 0;
        c.cov = Vec4(15 * 15, 15 * 15, 15 * 15, 15 * 15).asDiagonal();
        m.birth.components.push_back(c);
    }

    m.sensor.H << 1, 0, 0, 0, 0, 0, 1, 0;
    m.sensor.R = Vec2(30 * 30, 30 * 30).asDiagonal();
    m.sensor.p_detect = 0.3;
    m.sensor.clutter_rate = 3.0;
    return m;
}

}  // namespace glmb
