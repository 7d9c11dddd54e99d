#pragma once

// Polar constant-acceleration UAV kinematics and the reference trajectory.

#include <array>
#include <cmath>
#include <string>

#include "aifscc/gaussian.hpp"

namespace aifscc {

/// x = [rho, psi, v_rho, omega]. psi is unwrapped.
struct UavState {
    double rho = 0.0;     ///< radial distance to the base station (m)
    double psi = 0.0;     ///< azimuth (rad)
    double v_rho = 0.0;   ///< radial velocity (m/s)
    double omega = 0.0;   ///< angular velocity (rad/s)

    Vec4 vec() const { return Vec4(rho, psi, v_rho, omega); }
    static UavState from(const Vec4& v) { return {v(0), v(1), v(2), v(3)}; }
    bool finite() const { return vec().allFinite(); }
};

/// u = [a_rho, a_omega].
struct ControlInput {
    double a_rho = 0.0;
    double a_omega = 0.0;

    Vec2 vec() const { return Vec2(a_rho, a_omega); }
    static ControlInput from(const Vec2& v) { return {v(0), v(1)}; }
};

struct ModelParams {
    double dt = 0.1;
    Mat4 A = Mat4::Identity();
    Mat42 B = Mat42::Zero();
    Mat4 Q = Mat4::Zero();
    Mat24 C = Mat24::Zero();
};

inline Mat4 transition_matrix(double dt) {
    Mat4 a = Mat4::Identity();
    a(0, 2) = dt;
    a(1, 3) = dt;
    return a;
}

inline Mat42 input_matrix(double dt) {
    Mat42 b = Mat42::Zero();
    b(0, 0) = 0.5 * dt * dt;
    b(1, 1) = 0.5 * dt * dt;
    b(2, 0) = dt;
    b(3, 1) = dt;
    return b;
}

inline Mat24 measurement_matrix() {
    Mat24 c = Mat24::Zero();
    c(0, 0) = 1.0;
    c(1, 1) = 1.0;
    return c;
}

inline ModelParams make_model(double dt, const std::array<double, 4>& q_diag) {
    if (!(dt > 0.0)) throw NonPositiveError("make_model: dt must be > 0");
    for (double q : q_diag) {
        if (!(q > 0.0)) throw NonPositiveError("make_model: process noise variances must be > 0");
    }
    ModelParams m;
    m.dt = dt;
    m.A = transition_matrix(dt);
    m.B = input_matrix(dt);
    m.Q = Vec4(q_diag[0], q_diag[1], q_diag[2], q_diag[3]).asDiagonal();
    m.C = measurement_matrix();
    return m;
}

/// Same matrices as make_model but Q = 0. Used by deterministic tests and the
/// zero-noise simulation mode.
inline ModelParams make_noiseless_model(double dt) {
    ModelParams m = make_model(dt, {1.0, 1.0, 1.0, 1.0});
    m.Q.setZero();
    return m;
}

enum class NoiseMode { Sampled, Suppressed };

/// x_{t+1} = A x + B u + n, n ~ N(0, Q). Suppressed mode returns A x + B u but
/// still consumes the same draws from rng.
inline UavState step_truth(const ModelParams& m, const UavState& x, const ControlInput& u,
                           RandomSource& rng, NoiseMode mode = NoiseMode::Sampled) {
    const Vec4 mean = m.A * x.vec() + m.B * u.vec();
    const Vec4 next = sample_gaussian<4>(rng, GaussianBelief<4>(mean, m.Q));
    return UavState::from(mode == NoiseMode::Sampled ? next : mean);
}

/// rho(t) = offset + amplitude sin(frequency t), v_rho(t) = velocity_amplitude cos(frequency t),
/// psi(t) = psi0 + omega t. The reference velocity amplitude is a separate parameter and
/// is not tied to amplitude * frequency.
struct TrajectoryParams {
    double amplitude = 5.0;
    double velocity_amplitude = 5.0;
    double frequency = 0.5;
    double offset = 50.0;
    double omega = 0.1;
    double psi0 = 0.0;
};

inline UavState desired_state(double t_seconds, const TrajectoryParams& traj = {}) {
    return {traj.offset + traj.amplitude * std::sin(traj.frequency * t_seconds),
            traj.psi0 + traj.omega * t_seconds,
            traj.velocity_amplitude * std::cos(traj.frequency * t_seconds),
            traj.omega};
}

}  // namespace aifscc
