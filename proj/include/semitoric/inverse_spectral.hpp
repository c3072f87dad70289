#pragma once

// Recovery of B22 and a2 from the minimal normalized spacing of Σ(n), using
//   min (E_{k+1} - E_k)/ħ = (2π/B22) / (|ln ħ| + a2 + ln 2 + γ) + O(ħ).

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "semitoric/constants.hpp"
#include "semitoric/quantum_spectrum.hpp"

namespace semitoric {

struct SpacingDatum {
    std::int64_t n = 0;
    double hbar = 0.0;
    double t_min = 0.0;
    std::size_t gap_index = 0;      // minimal gap is E[gap_index+1] - E[gap_index]
    bool straddles_zero = false;    // E[gap_index] < 0 < E[gap_index+1]
    bool shortcut_checked = false;  // odd n: compared against 2 E_min^+ / ħ
    bool shortcut_agrees = false;
};

inline constexpr double shortcut_relative_tolerance = 1e-10;

// Minimal consecutive gap of an ascending spectrum, divided by ħ.
inline SpacingDatum t_min(std::span<const double> sigma, double hbar) {
    if (sigma.size() < 2) throw std::invalid_argument("t_min: need at least two eigenvalues");
    if (!(hbar > 0.0)) throw std::invalid_argument("t_min: hbar must be positive");
    SpacingDatum d;
    d.n = static_cast<std::int64_t>(sigma.size()) - 1;
    d.hbar = hbar;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k + 1 < sigma.size(); ++k) {
        const double gap = sigma[k + 1] - sigma[k];
        if (gap < best) {
            best = gap;
            d.gap_index = k;
        }
    }
    d.t_min = best / hbar;
    d.straddles_zero = sigma[d.gap_index] < 0.0 && sigma[d.gap_index + 1] > 0.0;

    // Odd n: 0 is not an eigenvalue and the spectrum is symmetric, so the
    // smallest positive eigenvalue is E[(n+1)/2].
    if (d.n % 2 == 1) {
        const double shortcut = 2.0 * sigma[static_cast<std::size_t>((d.n + 1) / 2)] / hbar;
        d.shortcut_checked = true;
        d.shortcut_agrees = std::abs(shortcut - d.t_min) <= shortcut_relative_tolerance * std::abs(d.t_min);
    }
    return d;
}

inline SpacingDatum spacing_for_level(const QuantumParams& params, const SpectrumOptions& opt = {}) {
    const auto sigma = sigma_n(params, opt);
    return t_min(sigma, params.hbar());
}

// B22 ≈ 2π / (t_min |ln ħ|); converges like 1/|ln ħ|.
inline double recover_b22_simple(const SpacingDatum& d) {
    if (!(d.hbar < 1.0) || !(d.hbar > 0.0)) throw std::domain_error("recover_b22_simple: requires 0 < hbar < 1");
    return 2.0 * pi / (d.t_min * std::abs(std::log(d.hbar)));
}

// Two-level estimate that eliminates the constant term:
// B22 ≈ (2π/t_min(ħ1) - 2π/t_min(ħ2)) / ln(ħ2/ħ1).
inline double recover_b22_accel(const SpacingDatum& d1, const SpacingDatum& d2) {
    if (d1.hbar == d2.hbar) throw std::domain_error("recover_b22_accel: the two levels must have different hbar");
    return (2.0 * pi / d1.t_min - 2.0 * pi / d2.t_min) / std::log(d2.hbar / d1.hbar);
}

// a2 ≈ 2π/(B22 t_min) - |ln ħ| - ln 2 - γ.
inline double recover_a2(const SpacingDatum& d, double b22) {
    if (b22 == 0.0 || !std::isfinite(b22)) throw std::domain_error("recover_a2: b22 must be finite and non-zero");
    if (!(d.hbar < 1.0) || !(d.hbar > 0.0)) throw std::domain_error("recover_a2: requires 0 < hbar < 1");
    return 2.0 * pi / (b22 * d.t_min) - std::abs(std::log(d.hbar)) - ln2 - euler_gamma;
}

// |a2(b_est) - a2(b_ref)| = (2π/t_min) |1/b_est - 1/b_ref|.
inline double a2_shift_from_b22(const SpacingDatum& d, double b_est, double b_ref) {
    return 2.0 * pi / d.t_min * std::abs(1.0 / b_est - 1.0 / b_ref);
}

struct RecoveryRow {
    int k = 0;
    std::int64_t n = 0;
    double hbar = 0.0;
    double t_min = 0.0;
    double b22_simple = 0.0;
    double b22_accel = 0.0;
    double a2 = 0.0;
    double a2_over_ln2 = 0.0;
    double err_b22 = 0.0;         // b22_accel - 2
    double err_b22_simple = 0.0;  // b22_simple - 2
    double err_a2 = 0.0;          // a2 - 5 ln 2
    bool straddles_zero = false;
};

struct RecoverySeries {
    bool use_true_b22 = false;
    std::vector<RecoveryRow> rows;  // ascending in k
};

inline constexpr int max_study_level = 12;

inline std::int64_t level_n(int k) { return (std::int64_t{1} << k) + 1; }

// For k in [k_min, k_max], n = 2^k + 1. The accelerated estimator at level k
// pairs it with level k + 1.
inline RecoverySeries convergence_study(int k_min, int k_max, bool use_true_b22, const SpectrumOptions& opt = {}) {
    if (k_min < 1 || k_max > max_study_level || k_min > k_max)
        throw std::invalid_argument("convergence_study: require 1 <= k_min <= k_max <= 12");

    std::vector<SpacingDatum> data;
    for (int k = k_min; k <= k_max + 1; ++k) data.push_back(spacing_for_level(QuantumParams(level_n(k)), opt));

    RecoverySeries series;
    series.use_true_b22 = use_true_b22;
    for (int k = k_min; k <= k_max; ++k) {
        const auto& d = data[static_cast<std::size_t>(k - k_min)];
        const auto& next = data[static_cast<std::size_t>(k - k_min + 1)];
        RecoveryRow row;
        row.k = k;
        row.n = d.n;
        row.hbar = d.hbar;
        row.t_min = d.t_min;
        row.b22_simple = recover_b22_simple(d);
        row.b22_accel = recover_b22_accel(d, next);
        row.a2 = recover_a2(d, use_true_b22 ? true_b22 : row.b22_accel);
        row.a2_over_ln2 = row.a2 / ln2;
        row.err_b22 = row.b22_accel - true_b22;
        row.err_b22_simple = row.b22_simple - true_b22;
        row.err_a2 = row.a2 - true_a2;
        row.straddles_zero = d.straddles_zero;
        series.rows.push_back(row);
    }
    return series;
}

}  // namespace semitoric
