#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <random>

#include "semitoric/classical_core.hpp"

using namespace semitoric;

namespace {

// Cartesian form of X_H: ṗ = p × ∇_sphere H, u̇ = H_v, v̇ = -H_u.
using State = std::array<double, 5>;  // x, y, z, u, v

State cartesian_field(const State& s) {
    const auto [x, y, z, u, v] = s;
    return {-0.5 * z * v, 0.5 * z * u, 0.5 * (x * v - y * u), 0.5 * y, -0.5 * x};
}

State cartesian_rk4(State s, double duration, double step) {
    const int steps = static_cast<int>(std::lround(duration / step));
    auto add = [](const State& a, const State& b, double t) {
        State r;
        for (int i = 0; i < 5; ++i) r[i] = a[i] + t * b[i];
        return r;
    };
    for (int i = 0; i < steps; ++i) {
        const State k1 = cartesian_field(s);
        const State k2 = cartesian_field(add(s, k1, step / 2));
        const State k3 = cartesian_field(add(s, k2, step / 2));
        const State k4 = cartesian_field(add(s, k3, step));
        for (int c = 0; c < 5; ++c) s[c] += step / 6 * (k1[c] + 2 * k2[c] + 2 * k3[c] + k4[c]);
    }
    return s;
}

}  // namespace

TEST(PhasePoint, RejectsPointsOffTheSphere) {
    EXPECT_THROW(PhasePoint::make(1.0, 1.0, 0.0, 0.0, 0.0), std::domain_error);
    EXPECT_THROW(PhasePoint::make(0.0, 0.0, 1.0, NAN, 0.0), std::domain_error);
    EXPECT_NO_THROW(PhasePoint::make(0.6, 0.0, 0.8, 2.0, -1.0));
    EXPECT_THROW(PhasePoint::from_height_angle(1.5, 0.0, 0.0, 0.0), std::domain_error);
}

TEST(MomentumMap, SpecialPoints) {
    auto f = momentum_map(PhasePoint::make(0, 0, 1, 0, 0));
    EXPECT_DOUBLE_EQ(f.j, 1.0);
    EXPECT_DOUBLE_EQ(f.h, 0.0);
    f = momentum_map(PhasePoint::make(0, 0, -1, 0, 0));
    EXPECT_DOUBLE_EQ(f.j, -1.0);
    EXPECT_DOUBLE_EQ(f.h, 0.0);
    f = momentum_map(PhasePoint::make(1, 0, 0, 1, 0));
    EXPECT_DOUBLE_EQ(f.j, 0.5);
    EXPECT_DOUBLE_EQ(f.h, 0.5);
}

TEST(PoissonBracket, VanishesAtSamplePoints) {
    EXPECT_EQ(poisson_bracket_JH(PhasePoint::make(0, 0, 1, 0, 0)), 0.0);
    EXPECT_NEAR(poisson_bracket_JH(PhasePoint::make(1, 0, 0, 1, 0)), 0.0, 1e-12);
}

TEST(PoissonBracket, VanishesAtRandomPoints) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> z(-1, 1), th(-pi, pi), w(-5, 5);
    for (int i = 0; i < 1000; ++i) {
        const auto p = PhasePoint::from_height_angle(z(rng), th(rng), w(rng), w(rng));
        ASSERT_LT(std::abs(poisson_bracket_JH(p)), 1e-10);
    }
}

TEST(VectorField, ComponentsAndChartSingularity) {
    const auto p = PhasePoint::from_height_angle(0.0, 0.0, 0.5, 0.25);  // y = 0, x = 1
    const auto d = vector_field_H(p);
    EXPECT_EQ(d.du, 0.0);
    EXPECT_DOUBLE_EQ(d.dv, -0.5);
    EXPECT_DOUBLE_EQ(d.dz, 0.5 * 0.25);
    EXPECT_THROW(vector_field_H(PhasePoint::make(0, 0, 1, 0, 0)), chart_error);
    EXPECT_THROW(vector_field_H(PhasePoint::make(0, 0, -1, 1, 0)), chart_error);
}

TEST(VectorField, MatchesCartesianFormInTheChart) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> z(-0.95, 0.95), th(-pi, pi), w(-2, 2);
    for (int i = 0; i < 200; ++i) {
        const auto p = PhasePoint::from_height_angle(z(rng), th(rng), w(rng), w(rng));
        const auto d = vector_field_H(p);
        const auto c = cartesian_field({p.x(), p.y(), p.z(), p.u(), p.v()});
        // θ̇ from ẋ, ẏ: (x ẏ - y ẋ)/ρ^2
        const double rho2 = p.x() * p.x() + p.y() * p.y();
        const double dtheta = (p.x() * c[1] - p.y() * c[0]) / rho2;
        EXPECT_NEAR(d.du, c[3], 1e-14);
        EXPECT_NEAR(d.dv, c[4], 1e-14);
        EXPECT_NEAR(d.dz, c[2], 1e-14);
        EXPECT_NEAR(d.dtheta, dtheta, 1e-12);
    }
}

TEST(SingularFiber, SpecialParameters) {
    const auto top = singular_fiber({1.0, 0.7, +1});
    EXPECT_EQ(top.z(), 1.0);
    EXPECT_NEAR(top.x(), 0.0, 1e-15);
    EXPECT_NEAR(top.u(), 0.0, 1e-15);
    EXPECT_NEAR(top.v(), 0.0, 1e-15);

    const auto bottom = singular_fiber({-1.0, 0.0, +1});
    EXPECT_EQ(bottom.z(), -1.0);
    EXPECT_NEAR(std::hypot(bottom.u(), bottom.v()), 2.0, 1e-15);
    EXPECT_NEAR(bottom.rho(), 0.0, 1e-15);

    EXPECT_THROW(singular_fiber({1.5, 0.0, 1}), std::domain_error);
    EXPECT_THROW(singular_fiber({0.0, 0.0, 0}), std::domain_error);
}

TEST(SingularFiber, GridLiesOnTheFocusFocusFiber) {
    for (int eps : {1, -1})
        for (int a = 0; a < 100; ++a)
            for (int b = 0; b < 100; ++b) {
                const double zt = -1.0 + 2.0 * a / 99.0;
                const double tt = -pi + 2.0 * pi * b / 99.0;
                const auto f = momentum_map(singular_fiber({zt, tt, eps}));
                ASSERT_NEAR(f.j, 1.0, 1e-10);
                ASSERT_NEAR(f.h, 0.0, 1e-10);
            }
}

TEST(SingularFiber, SheetsMeetOnlyAtThePinch) {
    // The two sheets share (z, θ) coordinates; their plane parts differ by a
    // rotation of π, so they coincide only where r = 0, i.e. z~ = 1.
    for (int a = 0; a < 50; ++a) {
        const double zt = -1.0 + 2.0 * a / 50.0;
        const auto p = singular_fiber({zt, 0.3, 1});
        const auto q = singular_fiber({zt, 0.3, -1});
        EXPECT_GT(std::hypot(p.u() - q.u(), p.v() - q.v()), 1e-3);
    }
    const auto p = singular_fiber({1.0, 0.3, 1});
    const auto q = singular_fiber({1.0, 0.3, -1});
    EXPECT_NEAR(std::hypot(p.u() - q.u(), p.v() - q.v()), 0.0, 1e-15);
}

TEST(Flow, EquilibriumIsConstant) {
    const auto p0 = PhasePoint::make(0, 0, 1, 0, 0);
    const auto run = flow_H(p0, 1.0, 0.1);
    EXPECT_FALSE(run.truncated);
    ASSERT_EQ(run.trajectory.size(), 11u);
    for (const auto& p : run.trajectory) EXPECT_EQ(p, p0);
}

TEST(Flow, StaysOnTheSingularFiber) {
    const auto p0 = singular_fiber({0.2, 0.4, 1});
    const auto run = flow_H(p0, 1.0, 1e-3);
    EXPECT_FALSE(run.truncated);
    for (const auto& p : run.trajectory) {
        const auto f = momentum_map(p);
        ASSERT_LT(std::abs(f.j - 1.0), 1e-8);
        ASSERT_LT(std::abs(f.h), 1e-8);
    }
}

TEST(Flow, ConservesMomentumAndMatchesReferenceRun) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> z(-0.7, 0.7), th(-pi, pi), w(-1.5, 1.5);
    for (int trial = 0; trial < 5; ++trial) {
        const auto p0 = PhasePoint::from_height_angle(z(rng), th(rng), w(rng), w(rng));
        const auto f0 = momentum_map(p0);
        const auto run = flow_H(p0, 1.0, 1e-3);
        ASSERT_FALSE(run.truncated);
        ASSERT_EQ(run.trajectory.size(), 1001u);
        for (const auto& p : run.trajectory) {
            const auto f = momentum_map(p);
            ASSERT_LT(std::abs(f.j - f0.j), 1e-9);
            ASSERT_LT(std::abs(f.h - f0.h), 1e-9);
        }
        const auto ref = cartesian_rk4({p0.x(), p0.y(), p0.z(), p0.u(), p0.v()}, 1.0, 1e-4);
        const auto& end = run.trajectory.back();
        EXPECT_NEAR(end.x(), ref[0], 1e-9);
        EXPECT_NEAR(end.y(), ref[1], 1e-9);
        EXPECT_NEAR(end.z(), ref[2], 1e-9);
        EXPECT_NEAR(end.u(), ref[3], 1e-9);
        EXPECT_NEAR(end.v(), ref[4], 1e-9);
    }
}

TEST(Flow, ReportsChartExit) {
    // Starting next to the north pole with a large plane component, z reaches
    // the pole margin quickly.
    const auto p0 = PhasePoint::from_height_angle(1.0 - 2e-9, 0.0, 0.0, 50.0);
    const auto run = flow_H(p0, 1.0, 1e-2);
    EXPECT_TRUE(run.truncated);
    EXPECT_FALSE(run.reason.empty());
    EXPECT_LT(run.trajectory.size(), 101u);
    EXPECT_THROW(flow_H(p0, 1.0, 0.0), std::invalid_argument);
    EXPECT_THROW(flow_H(p0, -1.0, 0.1), std::invalid_argument);
}

TEST(BoundaryCurve, KnownValues) {
    const auto b1 = boundary_curve(1.0);
    EXPECT_DOUBLE_EQ(b1.upper.j, -1.0);
    EXPECT_DOUBLE_EQ(b1.upper.h, 0.0);
    EXPECT_DOUBLE_EQ(b1.lower.h, 0.0);
    const auto b3 = boundary_curve(std::sqrt(3.0));
    EXPECT_NEAR(b3.upper.j, 0.0, 1e-15);
    EXPECT_NEAR(b3.upper.h, 1.0 / std::pow(3.0, 0.75), 1e-15);
    EXPECT_NEAR(b3.lower.h, -1.0 / std::pow(3.0, 0.75), 1e-15);
    EXPECT_GT(boundary_curve(1e6).upper.j, 1e5);
    EXPECT_THROW(boundary_curve(0.5), std::domain_error);
}

TEST(BoundaryCurve, IsTheImageOfRelativeEquilibria) {
    // Random phase points never land above the upper branch.
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> z(-1, 1), th(-pi, pi), w(-2, 2);
    for (int i = 0; i < 2000; ++i) {
        const auto f = momentum_map(PhasePoint::from_height_angle(z(rng), th(rng), w(rng), w(rng)));
        // Solve j(s) = f.j for s >= 1: s^2 - 2 j s - 3 = 0.
        if (f.j < -1.0) FAIL() << "J below the minimum";
        const double s = f.j + std::sqrt(f.j * f.j + 3.0);
        const auto b = boundary_curve(std::max(1.0, s));
        EXPECT_LE(std::abs(f.h), b.upper.h + 1e-12);
    }
}
