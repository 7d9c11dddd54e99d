#pragma once

// Control and sensing costs and the goal prior they define.

#include <cmath>
#include <span>

#include "aifscc/gaussian.hpp"
#include "aifscc/sensing_model.hpp"
#include "aifscc/uav_model.hpp"

namespace aifscc {

struct GoalParams {
    Mat4 Q_goal = Vec4(10.0, 1.0, 0.1, 0.1).asDiagonal();
    Mat2 R_goal = Vec2(0.01, 0.01).asDiagonal();
    double alpha = 1e-3;
    double beta = 1.0;
    TrajectoryParams traj;

    void validate() const {
        if (!is_spd<4>(Q_goal)) throw NotSpdError("GoalParams: Q_goal must be SPD");
        if (!is_spd<2>(R_goal)) throw NotSpdError("GoalParams: R_goal must be SPD");
        if (!(alpha > 0.0)) throw NonPositiveError("GoalParams: alpha must be > 0");
        if (!(beta > 0.0)) throw NonPositiveError("GoalParams: beta must be > 0");
    }
};

struct StepCosts {
    double j_control = 0.0;
    double j_sensing = 0.0;
    double j_total = 0.0;

    static StepCosts of(double control, double sensing) { return {control, sensing, control + sensing}; }
};

/// (x - x_d)^T Q_goal (x - x_d) + u^T R_goal u
inline double control_cost(const GoalParams& g, const UavState& x, const UavState& x_desired,
                           const ControlInput& u) {
    const Vec4 dev = x.vec() - x_desired.vec();
    const Vec2 uv = u.vec();
    return dev.dot(g.Q_goal * dev) + uv.dot(g.R_goal * uv);
}

/// alpha k^2 + beta ln det R(k)
inline double sensing_cost(const GoalParams& g, const SensingParams& p, SubcarrierAllocation k) {
    const double kd = static_cast<double>(k.value());
    return g.alpha * kd * kd + g.beta * log_det_obs_covariance(p, k);
}

inline double cumulative_cost(std::span<const StepCosts> steps) {
    if (steps.empty()) throw EmptySequenceError("cumulative_cost: empty sequence");
    double total = 0.0;
    for (const StepCosts& s : steps) total += s.j_total;
    return total;
}

/// Unnormalized log goal prior: -J_control(x_next, u) - J_sensing(k_next).
inline double goal_prior_log_density(const GoalParams& g, const SensingParams& p,
                                     const UavState& x_next, const UavState& x_desired,
                                     const ControlInput& u, SubcarrierAllocation k_next) {
    return -control_cost(g, x_next, x_desired, u) - sensing_cost(g, p, k_next);
}

}  // namespace aifscc
