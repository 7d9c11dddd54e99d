#pragma once

// Independent reference computations used only by tests. None of these call
// into the library's estimator or planner; they use plain Eigen LU inverses
// and brute force.

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>

#include <Eigen/Dense>

namespace oracle {

using Eigen::Matrix2d;
using Eigen::Matrix4d;
using Eigen::Vector2d;
using Eigen::Vector4d;

/// Random SPD matrix G G^T + floor I with entries of G ~ N(0, scale^2).
template <int N>
Eigen::Matrix<double, N, N> random_spd(std::mt19937_64& rng, double scale = 1.0, double floor = 0.2) {
    std::normal_distribution<double> nd(0.0, scale);
    Eigen::Matrix<double, N, N> g;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) g(i, j) = nd(rng);
    Eigen::Matrix<double, N, N> m = g * g.transpose() + floor * Eigen::Matrix<double, N, N>::Identity();
    return 0.5 * (m + m.transpose());
}

template <int N>
Eigen::Matrix<double, N, 1> random_vec(std::mt19937_64& rng, double scale = 1.0) {
    std::normal_distribution<double> nd(0.0, scale);
    Eigen::Matrix<double, N, 1> v;
    for (int i = 0; i < N; ++i) v(i) = nd(rng);
    return v;
}

struct GainFormResult {
    Vector4d mean;
    Matrix4d cov;
};

/// Kalman measurement update in gain form.
inline GainFormResult kalman_gain_update(const Vector4d& m, const Matrix4d& W, const Eigen::Matrix<double, 2, 4>& C,
                                         const Matrix2d& R, const Vector2d& y) {
    const Matrix2d S = C * W * C.transpose() + R;
    const Eigen::Matrix<double, 4, 2> gain = W * C.transpose() * S.inverse();
    GainFormResult r;
    r.mean = m + gain * (y - C * m);
    r.cov = (Matrix4d::Identity() - gain * C) * W;
    r.cov = 0.5 * (r.cov + r.cov.transpose());
    return r;
}

/// Minimizes a smooth 2-D function by Newton iterations on central-difference
/// gradients and Hessians. Exact (to rounding) for quadratics.
inline Vector2d fd_newton_minimize(const std::function<double(const Vector2d&)>& h, Vector2d u,
                                   int iterations = 4) {
    for (int it = 0; it < iterations; ++it) {
        const double step = 1e-2 * std::max(1.0, u.cwiseAbs().maxCoeff());
        Vector2d grad;
        Matrix2d hess;
        for (int i = 0; i < 2; ++i) {
            Vector2d ei = Vector2d::Zero();
            ei(i) = step;
            grad(i) = (h(u + ei) - h(u - ei)) / (2.0 * step);
            for (int j = 0; j < 2; ++j) {
                Vector2d ej = Vector2d::Zero();
                ej(j) = step;
                hess(i, j) = (h(u + ei + ej) - h(u + ei - ej) - h(u - ei + ej) + h(u - ei - ej)) / (4.0 * step * step);
            }
        }
        u -= hess.inverse() * grad;
    }
    return u;
}

/// argmin over k in 1..K of f(k), smallest index on ties.
inline int brute_force_argmin(int K, const std::function<double(int)>& f) {
    int best = 1;
    double best_v = f(1);
    for (int k = 2; k <= K; ++k) {
        const double v = f(k);
        if (v < best_v) {
            best_v = v;
            best = k;
        }
    }
    return best;
}

/// CRLB ranging variance written out independently of the library.
inline double crlb_range_variance(double k, double K, double bandwidth, double gamma,
                                  double c = 299792458.0) {
    return c * c * K * K / (8.0 * std::numbers::pi * std::numbers::pi * gamma * k * k * bandwidth * bandwidth);
}

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace oracle
