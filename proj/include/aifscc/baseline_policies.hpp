#pragma once

// Comparison policies: greedy least-squares control, and random sensing drawn
// from the zero-mean Gaussian prior N(0, 1/alpha).

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include <Eigen/LU>

#include "aifscc/gaussian.hpp"
#include "aifscc/objective.hpp"
#include "aifscc/sensing_model.hpp"
#include "aifscc/uav_model.hpp"

namespace aifscc {

enum class PolicyKind { Aif, GreedyControl, RandomSensing };

inline std::string_view to_string(PolicyKind p) {
    switch (p) {
        case PolicyKind::Aif: return "aif";
        case PolicyKind::GreedyControl: return "greedy";
        case PolicyKind::RandomSensing: return "random";
    }
    return "unknown";
}

inline std::optional<PolicyKind> parse_policy(std::string_view s) {
    if (s == "aif") return PolicyKind::Aif;
    if (s == "greedy" || s == "greedy_control") return PolicyKind::GreedyControl;
    if (s == "random" || s == "random_sensing") return PolicyKind::RandomSensing;
    return std::nullopt;
}

/// u = (B^T B)^{-1} B^T (x_desired_next - A m): drives the predicted mean onto the
/// reference in the least-squares sense, ignoring uncertainty and effort.
inline ControlInput greedy_control(const ModelParams& m, const Vec4& belief_mean,
                                   const UavState& x_desired_next) {
    const Mat2 normal = m.B.transpose() * m.B;
    const Vec2 u = normal.inverse() * (m.B.transpose() * (x_desired_next.vec() - m.A * belief_mean));
    return ControlInput::from(u);
}

/// z ~ N(0, 1/alpha), k = clamp(round(|z|), 1, K).
inline SubcarrierAllocation random_sensing(RandomSource& rng, const GoalParams& g,
                                           const SensingParams& p) {
    const double z = rng.standard_normal() / std::sqrt(g.alpha);
    const double mag = std::round(std::abs(z));
    const double clamped = std::clamp(mag, 1.0, static_cast<double>(p.K));
    return SubcarrierAllocation(static_cast<int>(clamped), p.K);
}

}  // namespace aifscc
