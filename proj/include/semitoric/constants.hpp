#pragma once

#include <numbers>

namespace semitoric {

inline constexpr double pi = std::numbers::pi;
inline constexpr double ln2 = std::numbers::ln2;

// Euler–Mascheroni constant, 0.57721566490153286060...
inline constexpr long double euler_gamma_ld = 0.57721566490153286060651209008240243L;
inline constexpr double euler_gamma = static_cast<double>(euler_gamma_ld);

// Ground-truth classical invariants of the coupled spin-oscillator.
inline constexpr double true_a1 = pi / 2.0;
inline constexpr double true_a2 = 5.0 * ln2;
inline constexpr double true_b22 = 2.0;
inline constexpr double true_height = 1.0;

// Focus-focus critical value F(m).
inline constexpr double focus_j = 1.0;
inline constexpr double focus_h = 0.0;

}  // namespace semitoric
