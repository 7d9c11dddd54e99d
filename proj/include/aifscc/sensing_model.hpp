#pragma once

// Observation model: range/bearing measurement whose range variance is the
// TOA Cramer-Rao bound for k of K subcarriers, bearing variance constant.

#include <cmath>
#include <numbers>
#include <string>

#include "aifscc/gaussian.hpp"
#include "aifscc/uav_model.hpp"

namespace aifscc {

inline constexpr double kSpeedOfLight = 299792458.0;

struct SensingParams {
    int K = 64;
    double bandwidth_hz = 200e6;
    double gamma = 10.0;                                        ///< linear SNR
    double sigma_theta_sq = std::pow(5.0 * std::numbers::pi / 180.0, 2);  ///< (5 deg)^2
    double c = kSpeedOfLight;

    void validate() const {
        if (K < 1) throw ConfigError("SensingParams: K must be >= 1");
        if (!(bandwidth_hz > 0.0)) throw NonPositiveError("SensingParams: bandwidth must be > 0");
        if (!(gamma > 0.0)) throw NonPositiveError("SensingParams: gamma must be > 0");
        if (!(sigma_theta_sq > 0.0)) throw NonPositiveError("SensingParams: sigma_theta_sq must be > 0");
    }
};

/// Number of subcarriers allocated to localization in one slot, 1 <= k <= K.
class SubcarrierAllocation {
public:
    SubcarrierAllocation(int k, int K) : k_(k) {
        if (k < 1 || k > K) {
            throw ConfigError("subcarrier allocation " + std::to_string(k) + " outside [1, " +
                              std::to_string(K) + "]");
        }
    }

    int value() const noexcept { return k_; }
    friend bool operator==(SubcarrierAllocation, SubcarrierAllocation) = default;

private:
    int k_;
};

struct Observation {
    double r_meas = 0.0;
    double theta_meas = 0.0;

    Vec2 vec() const { return Vec2(r_meas, theta_meas); }
};

/// sigma_r^2(k) = c^2 / (8 pi^2 gamma (k/K)^2 B^2)
inline double ranging_variance(const SensingParams& p, SubcarrierAllocation k) {
    const double frac = static_cast<double>(k.value()) / static_cast<double>(p.K);
    const double pi = std::numbers::pi;
    return (p.c * p.c) / (8.0 * pi * pi * p.gamma * frac * frac * p.bandwidth_hz * p.bandwidth_hz);
}

inline Mat2 obs_covariance(const SensingParams& p, SubcarrierAllocation k) {
    Mat2 r = Mat2::Zero();
    r(0, 0) = ranging_variance(p, k);
    r(1, 1) = p.sigma_theta_sq;
    return r;
}

inline double log_det_obs_covariance(const SensingParams& p, SubcarrierAllocation k) {
    return std::log(ranging_variance(p, k)) + std::log(p.sigma_theta_sq);
}

/// y = C x + n, n ~ N(0, R(k)). In suppressed mode y = C x exactly; the rng is
/// still advanced so that the noise stream stays aligned between modes.
inline Observation observe(const SensingParams& p, const Mat24& C, const UavState& x_true,
                           SubcarrierAllocation k, RandomSource& rng,
                           NoiseMode mode = NoiseMode::Sampled) {
    const Vec2 clean = C * x_true.vec();
    const Vec2 noisy = sample_gaussian<2>(rng, GaussianBelief<2>(clean, obs_covariance(p, k)));
    const Vec2 y = mode == NoiseMode::Sampled ? noisy : clean;
    return {y(0), y(1)};
}

}  // namespace aifscc
