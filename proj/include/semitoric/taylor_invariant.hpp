#pragma once

// First-order Taylor series invariant (a1, a2) of the focus-focus point
// m = (0, 0, 1, 0, 0), evaluated through the localized limit formulas along the
// radial loop γ0 on the singular fiber.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "semitoric/classical_core.hpp"
#include "semitoric/constants.hpp"

namespace semitoric {

// Linearized Eliasson coordinates at m. The linear map is
//   v = (x̂2 + ξ̂1)/√2,  x = (x̂2 - ξ̂1)/√2,  u = (-x̂1 + ξ̂2)/√2,  y = (x̂1 + ξ̂2)/√2,
// with (r̂, t̂) the polar pair of (x̂1, x̂2) and (ρ̂, α̂) that of (ξ̂1, ξ̂2).
struct LinearizedCoords {
    double x1 = 0.0, x2 = 0.0, xi1 = 0.0, xi2 = 0.0;

    static LinearizedCoords from_tangent(double x, double y, double u, double v) {
        constexpr double s = std::numbers::sqrt2 / 2.0;
        return {s * (y - u), s * (v + x), s * (v - x), s * (y + u)};
    }

    static LinearizedCoords from_phase(const PhasePoint& p) { return from_tangent(p.x(), p.y(), p.u(), p.v()); }

    struct Tangent {
        double x, y, u, v;
    };

    Tangent to_tangent() const {
        constexpr double s = std::numbers::sqrt2 / 2.0;
        return {s * (x2 - xi1), s * (x1 + xi2), s * (-x1 + xi2), s * (x2 + xi1)};
    }

    double r() const { return std::hypot(x1, x2); }
    double rho() const { return std::hypot(xi1, xi2); }
    double x_angle() const { return std::atan2(x2, x1); }
    double xi_angle() const { return std::atan2(xi2, xi1); }

    // Flow of q1 = x̂1 ξ̂2 - x̂2 ξ̂1 for time phi: both planes rotate by phi.
    LinearizedCoords rotated(double phi) const {
        const double c = std::cos(phi), s = std::sin(phi);
        return {c * x1 - s * x2, s * x1 + c * x2, c * xi1 - s * xi2, s * xi1 + c * xi2};
    }

    // Quadratic model q = (q1, q2).
    double q1() const { return x1 * xi2 - x2 * xi1; }
    double q2() const { return x1 * xi1 + x2 * xi2; }
};

namespace detail {

inline void require_open_unit_interval(double u, const char* what) {
    if (!(u > 0.0 && u <= 2.0)) throw std::domain_error(std::string(what) + ": argument must lie in (0, 2]");
}

// sqrt(1 - u^2/4) computed as sqrt((1 - u/2)(1 + u/2)).
inline double half_root(double u) { return std::sqrt((1.0 - 0.5 * u) * (1.0 + 0.5 * u)); }

}  // namespace detail

// Endpoints of the γ0 arc used in the limit: A0 on the ε = +1 sheet and B0 on the
// ε = -1 sheet, both at height z = 1 - u^2/2 with v = x = 0.
inline PhasePoint gamma0_start(double u) {
    detail::require_open_unit_interval(u, "gamma0_start");
    return singular_fiber({1.0 - 0.5 * u * u, -pi / 2.0, +1});
}

inline PhasePoint gamma0_end(double u) {
    detail::require_open_unit_interval(u, "gamma0_end");
    return singular_fiber({1.0 - 0.5 * u * u, +pi / 2.0, -1});
}

// ∫_{u1}^{2} du / (u sqrt(1 - u^2/4)) = ln(2/u1) + ln(1 + sqrt(1 - u1^2/4)).
inline double kappa_integral_closed(double u1) {
    detail::require_open_unit_interval(u1, "kappa_integral_closed");
    return std::log(2.0 / u1) + std::log1p(detail::half_root(u1));
}

// ln(r̂_{A0} ρ̂_{B0}) = 2 ln(u/√2) + ln(2 - u^2/4 + 2 sqrt(1 - u^2/4)).
inline double log_factor(double u) {
    detail::require_open_unit_interval(u, "log_factor");
    const double s = detail::half_root(u);
    return 2.0 * std::log(u / std::numbers::sqrt2) + std::log(2.0 - 0.25 * u * u + 2.0 * s);
}

// 2 κ(u) + ln(r̂_{A0} ρ̂_{B0}); tends to a2 as u -> 0 with an O(u^2) error.
inline double a2_bracket(double u) {
    detail::require_open_unit_interval(u, "a2_bracket");
    return 2.0 * kappa_integral_closed(u) + log_factor(u);
}

// r̂^2 along γ0: (u^2/2)(2 - u^2/4 + sign·2 sqrt(1 - u^2/4)) = (u^2/2)(1 + sign·s)^2.
// sign = +1 is the branch consistent with log_factor; sign = -1 is kept as a
// diagnostic (it behaves like u^6/128 near 0).
inline double hat_radius_squared(double u, int sign) {
    detail::require_open_unit_interval(u, "hat_radius_squared");
    if (sign != 1 && sign != -1) throw std::domain_error("hat_radius_squared: sign must be +1 or -1");
    const double s = detail::half_root(u);
    // 1 - s = (u^2/4)/(1 + s) avoids cancellation for small u
    const double factor = sign > 0 ? 1.0 + s : 0.25 * u * u / (1.0 + s);
    return 0.5 * u * u * factor * factor;
}

struct A2Limit {
    double value = 0.0;
    int iterations = 0;
    std::vector<std::pair<double, double>> diagnostics;  // (u, a2_bracket(u))
};

// Evaluates a2_bracket on u = 2^{-k} and extrapolates in u^2 (Richardson table)
// until two successive estimates differ by less than `tolerance`.
inline A2Limit a2_limit(double tolerance) {
    if (!(tolerance > 0.0)) throw std::invalid_argument("a2_limit: tolerance must be positive");
    constexpr int max_halvings = 60;
    constexpr std::size_t max_order = 6;

    A2Limit out;
    std::vector<double> prev, row;
    double prev_estimate = 0.0;
    for (int k = 1; k <= max_halvings; ++k) {
        const double u = std::ldexp(1.0, -k);
        const double f = a2_bracket(u);
        out.diagnostics.emplace_back(u, f);

        row.assign(1, f);
        for (std::size_t j = 1; j <= std::min(prev.size(), max_order); ++j) {
            const double w = std::ldexp(1.0, static_cast<int>(2 * j)) - 1.0;  // 4^j - 1
            row.push_back(row[j - 1] + (row[j - 1] - prev[j - 1]) / w);
        }
        const double estimate = row.back();
        out.iterations = k;
        if (k >= 2 && std::abs(estimate - prev_estimate) < tolerance) {
            out.value = estimate;
            return out;
        }
        prev_estimate = estimate;
        prev.swap(row);
    }
    throw std::runtime_error("a2_limit: no convergence to tolerance within 60 halvings");
}

struct A1Angles {
    double x_angle_start = 0.0;  // t̂ at A0
    double xi_angle_end = 0.0;   // α̂ at B0
    double a1 = 0.0;             // difference reduced to [0, 2π)
    double r2_start = 0.0;       // r̂^2 at A0
    double rho2_end = 0.0;       // ρ̂^2 at B0
};

// Angle data at the γ0 endpoints in linearized coordinates, optionally after
// rotating by the q1 flow (`gauge`). The difference does not depend on the gauge.
inline A1Angles a1_angles(double u, double gauge = 0.0) {
    const auto a = LinearizedCoords::from_phase(gamma0_start(u)).rotated(gauge);
    const auto b = LinearizedCoords::from_phase(gamma0_end(u)).rotated(gauge);
    A1Angles out;
    out.x_angle_start = a.x_angle();
    out.xi_angle_end = b.xi_angle();
    out.a1 = std::remainder(out.x_angle_start - out.xi_angle_end, 2.0 * pi);
    if (out.a1 < 0.0) out.a1 += 2.0 * pi;
    out.r2_start = a.x1 * a.x1 + a.x2 * a.x2;
    out.rho2_end = b.xi1 * b.xi1 + b.xi2 * b.xi2;
    return out;
}

// a1 = t̂_{A0} - α̂_{B0}; the κ1 integral along γ0 vanishes because κ1(X_H) = 0.
inline double a1_value(double u = 1e-2) { return a1_angles(u).a1; }

struct InvariantResult {
    double a1 = 0.0;
    double a2 = 0.0;
    std::vector<std::pair<double, double>> diagnostics;
};

inline InvariantResult taylor_invariants(double tolerance = 1e-12) {
    auto lim = a2_limit(tolerance);
    return {a1_value(), lim.value, std::move(lim.diagnostics)};
}

}  // namespace semitoric
