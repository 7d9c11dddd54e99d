#pragma once

/**
 * State estimation by message passing on the linear-Gaussian factor graph
 *
 *   b(x_{t-1}) --[f^x_t: N(A x + B u, Q)]--> x_t <--[f^y_t: N(C x, R(k_t))]-- y_t
 *
 * The forward message through the transition factor is the predicted belief
 * N(m_{t|t-1}, W_{t|t-1}). Multiplying it with the observation message gives
 * the posterior in information form:
 *
 *   W_t = (W_{t|t-1}^{-1} + C^T R^{-1} C)^{-1}
 *   m_t = W_t (C^T R^{-1} y + W_{t|t-1}^{-1} m_{t|t-1})
 *
 * which is algebraically the Kalman filter measurement update. Only the filtered
 * marginal b(x_t) is kept; no smoothing over past slots.
 */

#include "aifscc/gaussian.hpp"
#include "aifscc/sensing_model.hpp"
#include "aifscc/uav_model.hpp"

namespace aifscc {

using StateBelief = GaussianBelief<4>;

/// Belief over x_t before the slot-t observation is absorbed.
struct PredictedBelief {
    Vec4 mean = Vec4::Zero();
    Mat4 cov = Mat4::Identity();

    StateBelief belief() const { return {mean, cov}; }
};

inline PredictedBelief predict(const ModelParams& m, const StateBelief& prior,
                               const ControlInput& u_prev) {
    PredictedBelief out;
    out.mean = m.A * prior.mean + m.B * u_prev.vec();
    out.cov = symmetrize<4>(m.A * prior.cov * m.A.transpose() + m.Q);
    if (!is_spd<4>(out.cov)) throw NotSpdError("predict: propagated covariance is not SPD");
    return out;
}

inline StateBelief update(const PredictedBelief& pred, const Observation& y, const Mat24& C,
                          const Mat2& R) {
    const Mat4 prior_info = spd_inverse<4>(pred.cov);
    const Mat2 r_info = spd_inverse<2>(R);
    const Mat4 post_info = symmetrize<4>(prior_info + C.transpose() * r_info * C);
    StateBelief post;
    post.cov = spd_inverse<4>(post_info);
    post.mean = post.cov * (C.transpose() * r_info * y.vec() + prior_info * pred.mean);
    if (!post.mean.allFinite()) throw NotSpdError("update: non-finite posterior mean");
    return post;
}

inline StateBelief estimate_step(const ModelParams& m, const StateBelief& prior,
                                 const ControlInput& u_prev, const Observation& y, const Mat2& R) {
    return update(predict(m, prior, u_prev), y, m.C, R);
}

}  // namespace aifscc
