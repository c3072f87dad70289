#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "semitoric/inverse_spectral.hpp"

using namespace semitoric;

namespace {

SpacingDatum synthetic(double hbar, double b, double c) {
    SpacingDatum d;
    d.hbar = hbar;
    d.t_min = 2.0 * pi / (b * (std::abs(std::log(hbar)) + c));
    return d;
}

}  // namespace

TEST(TMin, LevelOne) {
    const auto s = sigma_n(QuantumParams(1));
    const auto d = t_min(s, 1.0);
    EXPECT_NEAR(d.t_min, 2.0 * std::pow(0.5, 1.5), 1e-14);
    EXPECT_TRUE(d.straddles_zero);
    EXPECT_TRUE(d.shortcut_checked);
    EXPECT_TRUE(d.shortcut_agrees);
    EXPECT_THROW(t_min(std::vector<double>{1.0}, 1.0), std::invalid_argument);
    EXPECT_THROW(t_min(std::vector<double>{0.0, 1.0}, 0.0), std::invalid_argument);
}

TEST(TMin, OddLevelsUseTheCentralGap) {
    for (std::int64_t n : {13, 27, 129, 513}) {
        const auto d = spacing_for_level(QuantumParams(n));
        EXPECT_TRUE(d.straddles_zero) << "n = " << n;
        EXPECT_EQ(d.gap_index, static_cast<std::size_t>((n - 1) / 2));
        EXPECT_TRUE(d.shortcut_agrees) << "n = " << n;
    }
}

TEST(TMin, HandBuiltSpectrum) {
    const std::vector<double> s = {-3.0, -1.0, -0.5, 0.5, 1.0, 3.0};
    const auto d = t_min(s, 0.5);
    EXPECT_DOUBLE_EQ(d.t_min, 1.0);
    EXPECT_EQ(d.gap_index, 1u);
    EXPECT_FALSE(d.straddles_zero);
    EXPECT_TRUE(d.shortcut_checked);
    EXPECT_FALSE(d.shortcut_agrees);
}

TEST(SyntheticInversion, SimpleEstimator) {
    for (double hbar : {0.5, 0.1, 1e-3}) {
        SpacingDatum d;
        d.hbar = hbar;
        d.t_min = 2.0 * pi / (2.0 * std::abs(std::log(hbar)));
        EXPECT_NEAR(recover_b22_simple(d), 2.0, 1e-12);
    }
    SpacingDatum bad;
    bad.hbar = 1.0;
    bad.t_min = 1.0;
    EXPECT_THROW(recover_b22_simple(bad), std::domain_error);
}

TEST(SyntheticInversion, AcceleratedEstimatorEliminatesTheConstant) {
    for (double b : {2.0, 0.7, 5.0})
        for (double c : {3.0, -0.4, 10.0}) {
            const auto d1 = synthetic(0.1, b, c), d2 = synthetic(0.013, b, c);
            EXPECT_NEAR(recover_b22_accel(d1, d2), b, 1e-12 * b);
            // The constant follows from either level once B is known.
            const double a2 = recover_a2(d1, b);
            EXPECT_NEAR(a2 + ln2 + euler_gamma, c, 1e-12 * (1 + std::abs(c)));
        }
    const auto d = synthetic(0.1, 2.0, 3.0);
    EXPECT_THROW(recover_b22_accel(d, d), std::domain_error);
    auto relabeled = d;
    relabeled.hbar = 0.05;
    EXPECT_TRUE(std::isfinite(recover_b22_accel(d, relabeled)));
}

TEST(SyntheticInversion, A2Estimator) {
    const double c = 5.0 * ln2 + ln2 + euler_gamma;
    for (double hbar : {0.2, 0.01}) EXPECT_NEAR(recover_a2(synthetic(hbar, 2.0, c), 2.0), 5.0 * ln2, 1e-12);
    EXPECT_THROW(recover_a2(synthetic(0.1, 2.0, c), 0.0), std::domain_error);
    const auto d = synthetic(0.1, 2.0, c);
    EXPECT_NEAR(a2_shift_from_b22(d, 2.2, 2.0), std::abs(recover_a2(d, 2.2) - recover_a2(d, 2.0)), 1e-12);
}

TEST(ConvergenceStudy, Guards) {
    EXPECT_THROW(convergence_study(0, 3, false), std::invalid_argument);
    EXPECT_THROW(convergence_study(3, 13, false), std::invalid_argument);
    EXPECT_THROW(convergence_study(5, 4, false), std::invalid_argument);
    EXPECT_EQ(level_n(9), 513);
}

TEST(ConvergenceStudy, RecoversB22AndA2) {
    const auto s = convergence_study(1, 9, true);
    ASSERT_EQ(s.rows.size(), 9u);
    EXPECT_TRUE(s.use_true_b22);
    for (const auto& r : s.rows) {
        EXPECT_EQ(r.n, level_n(r.k));
        EXPECT_TRUE(r.straddles_zero);
        if (r.k >= 3) {
            EXPECT_LT(std::abs(r.err_b22), std::abs(r.err_b22_simple)) << "k = " << r.k;
        }
    }
    // The simple estimator approaches 2 from above, monotonically from k = 3.
    for (std::size_t i = 3; i < s.rows.size(); ++i)
        EXPECT_LT(std::abs(s.rows[i].err_b22_simple), std::abs(s.rows[i - 1].err_b22_simple));
    const auto& last = s.rows.back();
    EXPECT_LT(std::abs(last.err_b22), 0.05 * 2.0);
    EXPECT_LT(std::abs(last.a2_over_ln2 - 5.0), 0.5);
    for (std::size_t i = s.rows.size() - 3; i < s.rows.size(); ++i)
        EXPECT_LT(std::abs(s.rows[i].err_a2), std::abs(s.rows[i - 1].err_a2));
}

TEST(ConvergenceStudy, Level513WithTrueB22) {
    const auto d = spacing_for_level(QuantumParams(513));
    EXPECT_NEAR(recover_a2(d, 2.0) / ln2, 5.0, 0.5);
    const double simple = recover_b22_simple(d);
    EXPECT_GT(simple, 2.0);
    EXPECT_LT(simple, 4.5);
}
