#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <random>

#include "aifscc/efe_planner.hpp"
#include "oracles.hpp"

using namespace aifscc;

namespace {

const ModelParams kModel = make_model(0.1, {1e-2, 1e-3, 1e-2, 1e-3});

/// h(u) = (x_d - A m - B u)^T Sigma^{-1} (x_d - A m - B u) + u^T R_goal u, written
/// out with an LU inverse.
double h_objective(const ModelParams& m, const GoalParams& g, const StateBelief& b, const UavState& xd,
                   const Vec2& u) {
    const Mat4 sigma = m.A * b.cov * m.A.transpose() + m.Q + g.Q_goal.inverse();
    const Vec4 r = xd.vec() - m.A * b.mean - m.B * u;
    return r.dot(sigma.inverse() * r) + u.dot(g.R_goal * u);
}

}  // namespace

TEST(ControlPosterior, ZeroDiscrepancyZeroControl) {
    const GoalParams g;
    const StateBelief b(Vec4(50, 0, 5, 0.1), Mat4::Identity());
    const UavState xd = UavState::from(kModel.A * b.mean);
    const ControlPosterior cp = control_posterior(kModel, g, b, xd);
    EXPECT_LT(cp.mean.cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_TRUE(is_spd<2>(cp.cov));
}

TEST(ControlPosterior, HeavyEffortPenaltySuppressesAction) {
    GoalParams g;
    const StateBelief b(Vec4(55, 0.2, 0, 0.1), Mat4::Identity() * 0.1);
    const UavState xd = desired_state(0.1);
    const Vec2 base = control_posterior(kModel, g, b, xd).mean;
    g.R_goal *= 1e6;
    const Vec2 heavy = control_posterior(kModel, g, b, xd).mean;
    EXPECT_GT(base.norm(), 0.0);
    EXPECT_LT(heavy.norm(), 1e-3 * base.norm());
}

TEST(ControlPosterior, MatchesNumericalMinimizer) {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> wd(0.05, 20.0);
    for (int i = 0; i < 1000; ++i) {
        GoalParams g;
        g.Q_goal = Vec4(wd(rng), wd(rng), wd(rng), wd(rng)).asDiagonal();
        g.R_goal = Vec2(wd(rng) * 1e-2, wd(rng) * 1e-2).asDiagonal();
        const StateBelief b(oracle::random_vec<4>(rng, 20.0), oracle::random_spd<4>(rng, 0.5, 0.01));
        const UavState xd = UavState::from(oracle::random_vec<4>(rng, 20.0));
        const Vec2 closed = control_posterior(kModel, g, b, xd).mean;
        const Vec2 numeric = oracle::fd_newton_minimize(
            [&](const Vec2& u) { return h_objective(kModel, g, b, xd, u); }, Vec2::Zero());
        ASSERT_LT((closed - numeric).cwiseAbs().maxCoeff(), 1e-6 * std::max(1.0, numeric.cwiseAbs().maxCoeff()))
            << "trial " << i;
    }
}

TEST(ControlPosterior, AffineInDiscrepancy) {
    const GoalParams g;
    std::mt19937_64 rng(32);
    const StateBelief b(oracle::random_vec<4>(rng, 5.0), oracle::random_spd<4>(rng, 0.3));
    const Vec4 am = kModel.A * b.mean;
    const Vec4 d = oracle::random_vec<4>(rng);
    const Vec2 once = control_posterior(kModel, g, b, UavState::from(am + d)).mean;
    const Vec2 twice = control_posterior(kModel, g, b, UavState::from(am + 2 * d)).mean;
    EXPECT_LT((twice - 2 * once).cwiseAbs().maxCoeff(), 1e-9 * std::max(1.0, once.norm()));
}

TEST(ControlPosterior, CachedPlannerAgreesWithFreeFunction) {
    const GoalParams g;
    const SensingParams p;
    const EfePlanner planner(kModel, g, p);
    std::mt19937_64 rng(33);
    for (int i = 0; i < 20; ++i) {
        const StateBelief b(oracle::random_vec<4>(rng, 10.0), oracle::random_spd<4>(rng));
        const UavState xd = UavState::from(oracle::random_vec<4>(rng, 10.0));
        const PlannedAction a = planner.plan(b, xd);
        const PlannedAction f = plan(kModel, g, p, b, xd);
        EXPECT_LT((a.u.vec() - f.u.vec()).cwiseAbs().maxCoeff(), 1e-12);
        EXPECT_EQ(a.k_next, f.k_next);
    }
}

TEST(SelectControl, ReturnsMode) {
    ControlPosterior cp;
    EXPECT_EQ(select_control(cp).vec(), Vec2::Zero());
    cp.mean = Vec2(1.5, -0.2);
    cp.cov << 2.0, 0.3, 0.3, 1.0;
    EXPECT_EQ(select_control(cp).vec(), Vec2(1.5, -0.2));
    cp.cov *= 10.0;
    EXPECT_EQ(select_control(cp).vec(), Vec2(1.5, -0.2));
}

TEST(SelectSensing, DefaultsGive32) {
    const GoalParams g;
    const SensingParams p;
    const auto start = std::chrono::steady_clock::now();
    const int k = select_sensing(g, p).value();
    const auto elapsed = std::chrono::steady_clock::now() - start;
    EXPECT_EQ(k, 32);
    EXPECT_LT(std::chrono::duration<double>(elapsed).count(), 1e-3);
    EXPECT_EQ(k, oracle::brute_force_argmin(64, [&](int kk) {
                  return 1e-3 * kk * kk + std::log(oracle::crlb_range_variance(kk, 64, 200e6, 10.0)) +
                         std::log(p.sigma_theta_sq);
              }));
}

TEST(SelectSensing, Limits) {
    GoalParams g;
    const SensingParams p;
    g.alpha = 1e-12;
    EXPECT_EQ(select_sensing(g, p).value(), 64);
    g.alpha = 1.0;
    EXPECT_EQ(select_sensing(g, p).value(), 1);
}

TEST(SelectSensing, JointRescaleInvariant) {
    const SensingParams p;
    for (double alpha : {1e-4, 1e-3, 1e-2}) {
        GoalParams g;
        g.alpha = alpha;
        const int base = select_sensing(g, p).value();
        for (double c : {0.1, 3.0, 100.0}) {
            GoalParams s = g;
            s.alpha *= c;
            s.beta *= c;
            EXPECT_EQ(select_sensing(s, p).value(), base);
        }
    }
}

TEST(SelectSensing, NonIncreasingInAlpha) {
    const SensingParams p;
    int prev = 64;
    for (int e = -60; e <= 10; ++e) {
        GoalParams g;
        g.alpha = std::pow(10.0, e / 10.0);
        const int k = select_sensing(g, p).value();
        const int ref = oracle::brute_force_argmin(
            64, [&](int kk) { return sensing_cost(g, p, SubcarrierAllocation(kk, 64)); });
        EXPECT_EQ(k, ref);
        EXPECT_LE(k, prev);
        prev = k;
    }
}

TEST(SelectSensing, TieBreaksTowardSmallerK) {
    // With K = 2 choose alpha so that cost(1) == cost(2): 3 alpha = 2 beta ln 2.
    SensingParams p;
    p.K = 2;
    GoalParams g;
    g.beta = 1.0;
    g.alpha = 2.0 * std::log(2.0) / 3.0;
    const double c1 = sensing_cost(g, p, SubcarrierAllocation(1, 2));
    const double c2 = sensing_cost(g, p, SubcarrierAllocation(2, 2));
    ASSERT_NEAR(c1, c2, 1e-12);
    EXPECT_EQ(select_sensing(g, p).value(), c2 < c1 ? 2 : 1);
}

TEST(Plan, OnTrajectoryControlIsSmall) {
    const GoalParams g;
    const SensingParams p;
    const UavState x = desired_state(1.0);
    const StateBelief b(x.vec(), Mat4::Identity() * 1e-3);
    const UavState xd_next = desired_state(1.1);
    const PlannedAction a = plan(kModel, g, p, b, xd_next);
    EXPECT_EQ(a.k_next.value(), 32);
    // Exact mismatch between the constant-velocity prediction and the reference.
    const Vec4 gap = xd_next.vec() - kModel.A * x.vec();
    const Vec2 ls = (kModel.B.transpose() * kModel.B).inverse() * kModel.B.transpose() * gap;
    EXPECT_LE(a.u.vec().norm(), ls.norm() + 1e-12);
    EXPECT_LT(a.u.vec().norm(), 5.0);
}
