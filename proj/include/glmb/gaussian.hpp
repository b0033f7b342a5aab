#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

namespace glmb {

using Vec2 = Eigen::Vector2d;
using Vec4 = Eigen::Vector4d;
using Mat2 = Eigen::Matrix2d;
using Mat4 = Eigen::Matrix4d;
using Mat24 = Eigen::Matrix<double, 2, 4>;

// Gaussian state density over the 4D kinematic state [px, vx, py, vy].
struct Gaussian {
    Vec4 mean = Vec4::Zero();
    Mat4 cov = Mat4::Zero();
};

inline double log_gauss2(const Vec2& r, const Mat2& S) {
    Eigen::LLT<Mat2> llt(S);
    const Mat2 L = llt.matrixL();
    const Vec2 w = L.triangularView<Eigen::Lower>().solve(r);
    const double log_det = 2.0 * std::log(L(0, 0) * L(1, 1));
    return -std::log(2.0 * M_PI) - 0.5 * log_det - 0.5 * w.squaredNorm();
}

inline Gaussian kalman_predict(const Gaussian& g, const Mat4& F, const Mat4& Q) {
    return {F * g.mean, F * g.cov * F.transpose() + Q};
}

// Joseph-form measurement update; keeps the covariance symmetric over long chains.
inline Gaussian kalman_update(const Gaussian& g, const Mat24& H, const Mat2& R, const Vec2& z) {
    const Mat2 S = H * g.cov * H.transpose() + R;
    const Eigen::Matrix<double, 4, 2> K = g.cov * H.transpose() * S.inverse();
    const Mat4 IKH = Mat4::Identity() - K * H;
    Gaussian out;
    out.mean = g.mean + K * (z - H * g.mean);
    out.cov = IKH * g.cov * IKH.transpose() + K * R * K.transpose();
    return out;
}

// Log marginal likelihood of z under the predicted measurement density.
inline double kalman_log_likelihood(const Gaussian& g, const Mat24& H, const Mat2& R, const Vec2& z) {
    const Mat2 S = H * g.cov * H.transpose() + R;
    return log_gauss2(z - H * g.mean, S);
}

// Rauch-Tung-Striebel backward pass over a sequence of filtered densities.
inline std::vector<Gaussian> rts_smooth(const std::vector<Gaussian>& filt, const Mat4& F, const Mat4& Q) {
    std::vector<Gaussian> out = filt;
    for (int i = static_cast<int>(filt.size()) - 2; i >= 0; --i) {
        const Mat4 P_pred = F * filt[i].cov * F.transpose() + Q;
        const Mat4 G = filt[i].cov * F.transpose() * P_pred.inverse();
        out[i].mean = filt[i].mean + G * (out[i + 1].mean - F * filt[i].mean);
        out[i].cov = filt[i].cov + G * (out[i + 1].cov - P_pred) * G.transpose();
    }
    return out;
}

}  // namespace glmb
