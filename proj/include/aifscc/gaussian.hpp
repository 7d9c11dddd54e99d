#pragma once

// Small fixed-size linear algebra and Gaussian kernel shared by the estimator,
// the planner and the simulator. All covariances are stored in covariance
// (not information) form; inverses are formed transiently where needed.

#include <cmath>
#include <cstdint>
#include <random>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <Eigen/Eigenvalues>

#include "aifscc/errors.hpp"

namespace aifscc {

template <int N>
using Vec = Eigen::Matrix<double, N, 1>;
template <int R, int C>
using Mat = Eigen::Matrix<double, R, C>;

using Vec2 = Vec<2>;
using Vec4 = Vec<4>;
using Mat2 = Mat<2, 2>;
using Mat4 = Mat<4, 4>;
using Mat24 = Mat<2, 4>;
using Mat42 = Mat<4, 2>;

/// Relative tolerance used for every symmetry and SPD check in the library.
inline constexpr double kSpdTolerance = 1e-9;

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
    return m.allFinite();
}

template <int N>
Mat<N, N> symmetrize(const Mat<N, N>& m) {
    return 0.5 * (m + m.transpose());
}

template <int N>
bool is_symmetric(const Mat<N, N>& m, double rel_tol = kSpdTolerance) {
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    return (m - m.transpose()).cwiseAbs().maxCoeff() <= rel_tol * scale;
}

/// True iff m is symmetric (to kSpdTolerance) and a Cholesky factorization succeeds.
template <int N>
bool is_spd(const Mat<N, N>& m) {
    if (!all_finite(m) || !is_symmetric(m)) return false;
    Eigen::LLT<Mat<N, N>> llt(m);
    return llt.info() == Eigen::Success;
}

template <int N>
double min_eigenvalue(const Mat<N, N>& m) {
    Eigen::SelfAdjointEigenSolver<Mat<N, N>> es(symmetrize<N>(m), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

/// Inverse of a symmetric positive definite matrix via Cholesky.
/// Throws NotSpdError when the factorization fails.
template <int N>
Mat<N, N> spd_inverse(const Mat<N, N>& m) {
    if (!all_finite(m) || !is_symmetric(m)) {
        throw NotSpdError("spd_inverse: matrix is not finite and symmetric");
    }
    Eigen::LLT<Mat<N, N>> llt(m);
    if (llt.info() != Eigen::Success) {
        throw NotSpdError("spd_inverse: Cholesky factorization failed");
    }
    return symmetrize<N>(llt.solve(Mat<N, N>::Identity()));
}

/// Returns L with L * L^T == m for symmetric positive semidefinite m.
/// Positive definite inputs take the Cholesky path; singular PSD inputs (including
/// the zero matrix) fall back to a pivoted LDL^T.
template <int N>
Mat<N, N> psd_factor(const Mat<N, N>& m) {
    if (!all_finite(m) || !is_symmetric(m)) {
        throw NotSpdError("psd_factor: matrix is not finite and symmetric");
    }
    Eigen::LLT<Mat<N, N>> llt(m);
    if (llt.info() == Eigen::Success) return llt.matrixL();

    Eigen::LDLT<Mat<N, N>> ldlt(m);
    const Vec<N> d = ldlt.vectorD();
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if (ldlt.info() != Eigen::Success || d.minCoeff() < -kSpdTolerance * scale) {
        throw NotSpdError("psd_factor: matrix is not positive semidefinite");
    }
    Mat<N, N> lower = ldlt.matrixL();
    lower = lower * d.cwiseMax(0.0).cwiseSqrt().asDiagonal();
    // m = P^T L D L^T P
    return ldlt.transpositionsP().transpose() * lower;
}

/// Seeded pseudo-random stream. One root seed plus a stream id gives an
/// independent substream, so process noise, measurement noise and baseline
/// draws never share state.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed, std::uint64_t stream = 0) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(stream),
                          static_cast<std::uint32_t>(stream >> 32), 0x5eedu};
        engine_.seed(seq);
    }

    double standard_normal() { return normal_(engine_); }

    template <int N>
    Vec<N> standard_normal_vector() {
        Vec<N> z;
        for (int i = 0; i < N; ++i) z(i) = standard_normal();
        return z;
    }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Mean and covariance of a multivariate normal.
template <int N>
struct GaussianBelief {
    Vec<N> mean = Vec<N>::Zero();
    Mat<N, N> cov = Mat<N, N>::Identity();

    GaussianBelief() = default;
    GaussianBelief(const Vec<N>& m, const Mat<N, N>& c) : mean(m), cov(c) {}

    bool valid() const { return all_finite(mean) && is_spd<N>(cov); }

    void validate(const char* where) const {
        if (!all_finite(mean)) throw NotSpdError(std::string(where) + ": non-finite mean");
        if (!is_spd<N>(cov)) throw NotSpdError(std::string(where) + ": covariance is not SPD");
    }
};

/// mean + L z with L L^T = cov and z standard normal. Degenerate (PSD) covariances
/// are accepted; a zero covariance returns the mean exactly.
template <int N>
Vec<N> sample_gaussian(RandomSource& rng, const GaussianBelief<N>& b) {
    const Mat<N, N> factor = psd_factor<N>(b.cov);
    const Vec<N> z = rng.standard_normal_vector<N>();
    return b.mean + factor * z;
}

}  // namespace aifscc
