#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "aifscc/uav_model.hpp"

using namespace aifscc;

TEST(MakeModel, MatricesFromDt) {
    const ModelParams m = make_model(0.1, {1e-2, 1e-3, 1e-2, 1e-3});
    EXPECT_DOUBLE_EQ(m.A(0, 2), 0.1);
    EXPECT_DOUBLE_EQ(m.A(1, 3), 0.1);
    EXPECT_DOUBLE_EQ(m.B(0, 0), 0.005);
    EXPECT_DOUBLE_EQ(m.B(1, 1), 0.005);
    EXPECT_DOUBLE_EQ(m.B(2, 0), 0.1);
    EXPECT_DOUBLE_EQ(m.B(3, 1), 0.1);
    EXPECT_DOUBLE_EQ(m.B(0, 1), 0.0);
    EXPECT_EQ(m.Q, Mat4(Vec4(1e-2, 1e-3, 1e-2, 1e-3).asDiagonal()));
    Mat24 c = Mat24::Zero();
    c(0, 0) = c(1, 1) = 1.0;
    EXPECT_EQ(m.C, c);
}

TEST(MakeModel, RejectsNonPositive) {
    EXPECT_THROW(make_model(0.0, {1, 1, 1, 1}), NonPositiveError);
    EXPECT_THROW(make_model(-0.1, {1, 1, 1, 1}), NonPositiveError);
    EXPECT_THROW(make_model(0.1, {1, 0, 1, 1}), NonPositiveError);
}

TEST(StepTruth, NoiselessFixedPointAndHandValue) {
    const ModelParams m = make_noiseless_model(0.1);
    RandomSource rng(1);
    const UavState still{50, 0, 0, 0};
    const UavState same = step_truth(m, still, {}, rng);
    EXPECT_EQ(same.vec(), still.vec());

    const UavState x = step_truth(m, {50, 0, 5, 0.1}, {1, 0}, rng);
    EXPECT_NEAR(x.rho, 50.505, 1e-12);
    EXPECT_NEAR(x.psi, 0.01, 1e-12);
    EXPECT_NEAR(x.v_rho, 5.1, 1e-12);
    EXPECT_NEAR(x.omega, 0.1, 1e-12);
}

TEST(StepTruth, SuppressedModeMatchesNoiselessModel) {
    const ModelParams noisy = make_model(0.1, {1e-2, 1e-3, 1e-2, 1e-3});
    RandomSource rng(3);
    const UavState x = step_truth(noisy, {50, 0, 5, 0.1}, {1, 0}, rng, NoiseMode::Suppressed);
    EXPECT_NEAR(x.rho, 50.505, 1e-12);
}

TEST(StepTruth, LinearWhenNoiseless) {
    const ModelParams m = make_noiseless_model(0.1);
    RandomSource rng(1);
    const UavState x1{10, 0.2, -1, 0.05}, x2{-3, 1.0, 2, -0.3};
    const ControlInput u1{0.5, -0.1}, u2{-2, 0.4};
    const Vec4 lhs = step_truth(m, UavState::from(x1.vec() + x2.vec()), ControlInput::from(u1.vec() + u2.vec()), rng).vec();
    const Vec4 rhs = step_truth(m, x1, u1, rng).vec() + step_truth(m, x2, u2, rng).vec() - step_truth(m, {}, {}, rng).vec();
    EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(StepTruth, DeterministicTrajectory) {
    const ModelParams m = make_model(0.1, {1e-2, 1e-3, 1e-2, 1e-3});
    RandomSource a(11), b(11);
    UavState xa{100, 0, 5, 0.1}, xb = xa;
    for (int t = 0; t < 628; ++t) {
        xa = step_truth(m, xa, {0.1, 0.0}, a);
        xb = step_truth(m, xb, {0.1, 0.0}, b);
        ASSERT_EQ(xa.vec(), xb.vec());
    }
}

TEST(DesiredState, ClosedFormPoints) {
    const double pi = std::numbers::pi;
    const UavState d0 = desired_state(0.0);
    EXPECT_NEAR(d0.rho, 50, 1e-12);
    EXPECT_NEAR(d0.psi, 0, 1e-12);
    EXPECT_NEAR(d0.v_rho, 5, 1e-12);
    EXPECT_NEAR(d0.omega, 0.1, 1e-12);

    const UavState dpi = desired_state(pi);
    EXPECT_NEAR(dpi.rho, 55, 1e-12);
    EXPECT_NEAR(dpi.psi, 0.1 * pi, 1e-12);
    EXPECT_NEAR(dpi.v_rho, 0, 1e-12);

    const UavState d2pi = desired_state(2 * pi);
    EXPECT_NEAR(d2pi.rho, 50, 1e-12);
    EXPECT_NEAR(d2pi.psi, 0.2 * pi, 1e-12);
    EXPECT_NEAR(d2pi.v_rho, -5, 1e-12);
}

TEST(DesiredState, CircleIdentity) {
    for (int i = 0; i <= 1000; ++i) {
        const double t = 0.0628 * i;
        const UavState d = desired_state(t);
        EXPECT_NEAR(d.v_rho * d.v_rho / 25.0 + std::pow((d.rho - 50.0) / 5.0, 2), 1.0, 1e-12);
    }
}
