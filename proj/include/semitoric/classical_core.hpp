#pragma once

// Classical mechanics of the coupled spin-oscillator on S^2 x R^2 with
//   J = (u^2 + v^2)/2 + z,   H = (u x + v y)/2,
// and symplectic form dθ∧dz ⊕ du∧dv (both rescaling constants set to 1).

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "semitoric/constants.hpp"

namespace semitoric {

// Raised when the (u, v, z, θ) chart is used at or too close to a pole.
class chart_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

inline constexpr double sphere_tolerance = 1e-12;
inline constexpr double pole_margin = 1e-9;

// A point (x, y, z, u, v) with x^2 + y^2 + z^2 = 1.
class PhasePoint {
public:
    static PhasePoint make(double x, double y, double z, double u, double v) {
        const double r2 = x * x + y * y + z * z;
        if (!(std::abs(r2 - 1.0) <= sphere_tolerance))
            throw std::domain_error("PhasePoint: x^2+y^2+z^2 = " + std::to_string(r2) +
                                    " violates the sphere constraint");
        if (!std::isfinite(u) || !std::isfinite(v))
            throw std::domain_error("PhasePoint: plane coordinates must be finite");
        return PhasePoint(x, y, z, u, v);
    }

    // Builds the sphere part from height and azimuth.
    static PhasePoint from_height_angle(double z, double theta, double u, double v) {
        if (!(z >= -1.0 && z <= 1.0)) throw std::domain_error("PhasePoint: height outside [-1, 1]");
        const double rho = std::sqrt((1.0 - z) * (1.0 + z));
        return PhasePoint(rho * std::cos(theta), rho * std::sin(theta), z, u, v);
    }

    double x() const noexcept { return x_; }
    double y() const noexcept { return y_; }
    double z() const noexcept { return z_; }
    double u() const noexcept { return u_; }
    double v() const noexcept { return v_; }

    double rho() const noexcept { return std::hypot(x_, y_); }
    double theta() const noexcept { return std::atan2(y_, x_); }

    friend bool operator==(const PhasePoint&, const PhasePoint&) = default;

private:
    PhasePoint(double x, double y, double z, double u, double v) : x_(x), y_(y), z_(z), u_(u), v_(v) {}

    double x_, y_, z_, u_, v_;
};

struct MomentumValue {
    double j = 0.0;
    double h = 0.0;
};

inline MomentumValue momentum_map(const PhasePoint& p) {
    return {0.5 * (p.u() * p.u() + p.v() * p.v()) + p.z(), 0.5 * (p.u() * p.x() + p.v() * p.y())};
}

// {J, H} from closed-form partial derivatives. On the sphere the bracket of
// ω = dθ∧dz is {f, g} = -p·(∇f × ∇g); on the plane it is f_u g_v - f_v g_u.
inline double poisson_bracket_JH(const PhasePoint& p) {
    // ∇J = (0, 0, 1 | u, v),  ∇H = (u/2, v/2, 0 | x/2, y/2)
    const double jx = 0.0, jy = 0.0, jz = 1.0, ju = p.u(), jv = p.v();
    const double hx = 0.5 * p.u(), hy = 0.5 * p.v(), hz = 0.0, hu = 0.5 * p.x(), hv = 0.5 * p.y();
    const double cx = jy * hz - jz * hy;
    const double cy = jz * hx - jx * hz;
    const double cz = jx * hy - jy * hx;
    const double sphere = -(p.x() * cx + p.y() * cy + p.z() * cz);
    const double plane = ju * hv - jv * hu;
    return sphere + plane;
}

// Point in the (u, v, z, θ) chart, valid away from the poles.
struct ChartPoint {
    double u = 0.0, v = 0.0, z = 0.0, theta = 0.0;
};

// Tangent vector in the (u, v, z, θ) chart.
struct ChartVector {
    double du = 0.0, dv = 0.0, dz = 0.0, dtheta = 0.0;
};

inline ChartPoint to_chart(const PhasePoint& p) { return {p.u(), p.v(), p.z(), p.theta()}; }

inline PhasePoint from_chart(const ChartPoint& c) {
    return PhasePoint::from_height_angle(c.z, c.theta, c.u, c.v);
}

namespace detail {

inline ChartVector hamiltonian_field_in_chart(double x, double y, double z, double u, double v) {
    if (!(std::abs(z) < 1.0 - pole_margin))
        throw chart_error("vector_field_H: |z| = " + std::to_string(std::abs(z)) +
                          " is at a pole of the (u, v, z, theta) chart");
    const double one_minus_z2 = (1.0 - z) * (1.0 + z);
    // θ-component is -∂H/∂z with x, y depending on z through ρ = sqrt(1 - z^2).
    return {0.5 * y, -0.5 * x, 0.5 * (x * v - y * u), z * (x * u + y * v) / (2.0 * one_minus_z2)};
}

}  // namespace detail

// Hamiltonian vector field X_H in the (u, v, z, θ) chart.
inline ChartVector vector_field_H(const PhasePoint& p) {
    return detail::hamiltonian_field_in_chart(p.x(), p.y(), p.z(), p.u(), p.v());
}

// Parameters of the two sheets S_{±1} of the singular fiber Λ0 = F^{-1}(1, 0).
struct FiberParam {
    double z_tilde = 0.0;   // in [-1, 1]
    double theta_tilde = 0.0;
    int epsilon = 1;        // +1 or -1
};

// S_ε(z̃, θ̃): r = sqrt(2(1 - z̃)), t = θ̃ + επ/2, ρ = sqrt(1 - z̃^2), θ = θ̃.
inline PhasePoint singular_fiber(const FiberParam& param) {
    if (!(param.z_tilde >= -1.0 && param.z_tilde <= 1.0))
        throw std::domain_error("singular_fiber: z~ outside [-1, 1]");
    if (param.epsilon != 1 && param.epsilon != -1)
        throw std::domain_error("singular_fiber: epsilon must be +1 or -1");
    const double r = std::sqrt(2.0 * (1.0 - param.z_tilde));
    const double t = param.theta_tilde + param.epsilon * pi / 2.0;
    return PhasePoint::from_height_angle(param.z_tilde, param.theta_tilde, r * std::cos(t), r * std::sin(t));
}

struct FlowResult {
    std::vector<PhasePoint> trajectory;  // includes the starting point
    bool truncated = false;              // true if the run stopped at a chart boundary
    std::string reason;
};

// Integrates X_H with the classical fixed-step fourth-order Runge–Kutta scheme
// in the (u, v, z, θ) chart. Equilibria (the poles with u = v = 0) yield a
// constant trajectory. A run that would leave the chart returns the steps
// completed so far with `truncated` set.
inline FlowResult flow_H(const PhasePoint& p0, double duration, double step) {
    if (!(step > 0.0)) throw std::invalid_argument("flow_H: step must be positive");
    if (!(duration >= 0.0)) throw std::invalid_argument("flow_H: duration must be non-negative");

    const auto steps = static_cast<std::size_t>(std::llround(std::ceil(duration / step - 1e-9)));
    FlowResult out;
    out.trajectory.reserve(steps + 1);
    out.trajectory.push_back(p0);

    if (p0.x() == 0.0 && p0.y() == 0.0 && p0.u() == 0.0 && p0.v() == 0.0) {
        for (std::size_t i = 0; i < steps; ++i) out.trajectory.push_back(p0);
        return out;
    }

    auto field = [](const ChartPoint& c) {
        const double rho = std::sqrt((1.0 - c.z) * (1.0 + c.z));
        return detail::hamiltonian_field_in_chart(rho * std::cos(c.theta), rho * std::sin(c.theta), c.z, c.u,
                                                  c.v);
    };
    auto advance = [](const ChartPoint& c, const ChartVector& d, double s) {
        return ChartPoint{c.u + s * d.du, c.v + s * d.dv, c.z + s * d.dz, c.theta + s * d.dtheta};
    };

    ChartPoint state = to_chart(p0);
    double t = 0.0;
    try {
        for (std::size_t i = 0; i < steps; ++i) {
            const double h = std::min(step, duration - t);
            const ChartVector k1 = field(state);
            const ChartVector k2 = field(advance(state, k1, h / 2));
            const ChartVector k3 = field(advance(state, k2, h / 2));
            const ChartVector k4 = field(advance(state, k3, h));
            state.u += h / 6 * (k1.du + 2 * k2.du + 2 * k3.du + k4.du);
            state.v += h / 6 * (k1.dv + 2 * k2.dv + 2 * k3.dv + k4.dv);
            state.z += h / 6 * (k1.dz + 2 * k2.dz + 2 * k3.dz + k4.dz);
            state.theta += h / 6 * (k1.dtheta + 2 * k2.dtheta + 2 * k3.dtheta + k4.dtheta);
            if (!(std::abs(state.z) < 1.0 - pole_margin))
                throw chart_error("trajectory reached a pole at t = " + std::to_string(t + h));
            t += h;
            out.trajectory.push_back(from_chart(state));
        }
    } catch (const chart_error& e) {
        out.truncated = true;
        out.reason = e.what();
    }
    return out;
}

struct BoundaryPoints {
    MomentumValue upper;
    MomentumValue lower;
};

// Boundary of F(M): j(s) = (s^2 - 3)/(2s), h(s) = ±(s^2 - 1)/(2 s^{3/2}), s >= 1.
inline BoundaryPoints boundary_curve(double s) {
    if (!(s >= 1.0)) throw std::domain_error("boundary_curve: parameter must be >= 1");
    const double j = (s * s - 3.0) / (2.0 * s);
    const double h = (s * s - 1.0) / (2.0 * s * std::sqrt(s));
    return {{j, h}, {j, -h}};
}

}  // namespace semitoric
