#pragma once

// One-step expected-free-energy planning.
//
// Control: the goal factor on x_{t+1} (covariance Q_goal^{-1}) is pulled back
// through the transition factor onto u_t, using the current belief b(x_t):
//
//   Sigma_u   = A W_t A^T + Q + Q_goal^{-1}
//   W~_u^{-1} = B^T Sigma_u^{-1} B + R_goal
//   m~_u      = W~_u B^T Sigma_u^{-1} (x_{t+1}^desired - A m_t)
//
// and the action is the posterior mode m~_u.
//
// Sensing: with no future observation the likelihood message to k_{t+1} is flat,
// so k_{t+1} minimizes the sensing goal term alone, by exhaustive search over 1..K.

#include <limits>

#include "aifscc/gaussian.hpp"
#include "aifscc/objective.hpp"
#include "aifscc/sensing_model.hpp"
#include "aifscc/uav_model.hpp"
#include "aifscc/vfe_estimator.hpp"

namespace aifscc {

/// b(u_t) = N(mean, cov)
struct ControlPosterior {
    Vec2 mean = Vec2::Zero();
    Mat2 cov = Mat2::Identity();
};

struct PlannedAction {
    ControlInput u;
    SubcarrierAllocation k_next;
};

/// Control posterior given an already inverted goal precision (Q_goal^{-1}).
inline ControlPosterior control_posterior(const ModelParams& m, const Mat4& goal_state_cov,
                                          const Mat2& R_goal, const StateBelief& belief,
                                          const UavState& x_desired_next) {
    const Mat4 sigma_u = symmetrize<4>(m.A * belief.cov * m.A.transpose() + m.Q + goal_state_cov);
    const Mat4 sigma_u_inv = spd_inverse<4>(sigma_u);
    const Mat2 post_info = symmetrize<2>(m.B.transpose() * sigma_u_inv * m.B + R_goal);
    ControlPosterior cp;
    cp.cov = spd_inverse<2>(post_info);
    cp.mean = cp.cov * m.B.transpose() * sigma_u_inv * (x_desired_next.vec() - m.A * belief.mean);
    return cp;
}

inline ControlPosterior control_posterior(const ModelParams& m, const GoalParams& g,
                                          const StateBelief& belief, const UavState& x_desired_next) {
    return control_posterior(m, spd_inverse<4>(g.Q_goal), g.R_goal, belief, x_desired_next);
}

/// Mode of the Gaussian control posterior.
inline ControlInput select_control(const ControlPosterior& cp) { return ControlInput::from(cp.mean); }

/// argmin_{k in 1..K} alpha k^2 + beta ln det R(k); ties go to the smaller k.
inline SubcarrierAllocation select_sensing(const GoalParams& g, const SensingParams& p) {
    int best_k = 1;
    double best = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= p.K; ++k) {
        const double cost = sensing_cost(g, p, SubcarrierAllocation(k, p.K));
        if (cost < best) {
            best = cost;
            best_k = k;
        }
    }
    return SubcarrierAllocation(best_k, p.K);
}

/// Planner bound to fixed model/goal/sensing parameters. Caches Q_goal^{-1} and
/// the sensing argmin, both of which depend only on the parameters.
class EfePlanner {
public:
    EfePlanner(ModelParams model, GoalParams goals, SensingParams sensing)
        : model_(std::move(model)),
          goals_(std::move(goals)),
          sensing_(sensing),
          goal_state_cov_(spd_inverse<4>(goals_.Q_goal)),
          k_star_(select_sensing(goals_, sensing_)) {}

    ControlPosterior control_posterior(const StateBelief& belief, const UavState& x_desired_next) const {
        return aifscc::control_posterior(model_, goal_state_cov_, goals_.R_goal, belief, x_desired_next);
    }

    SubcarrierAllocation sensing() const { return k_star_; }

    PlannedAction plan(const StateBelief& belief, const UavState& x_desired_next) const {
        return {select_control(control_posterior(belief, x_desired_next)), k_star_};
    }

    const GoalParams& goals() const { return goals_; }

private:
    ModelParams model_;
    GoalParams goals_;
    SensingParams sensing_;
    Mat4 goal_state_cov_;
    SubcarrierAllocation k_star_;
};

inline PlannedAction plan(const ModelParams& m, const GoalParams& g, const SensingParams& p,
                          const StateBelief& belief, const UavState& x_desired_next) {
    return {select_control(control_posterior(m, g, belief, x_desired_next)), select_sensing(g, p)};
}

}  // namespace aifscc
