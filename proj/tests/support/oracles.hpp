#pragma once

// Independent reference computations used only by the tests.

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracle {

// Adaptive Gauss–Kronrod (7/15) quadrature with interval bisection.
namespace gk {

inline constexpr std::array<double, 8> xk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851, 0.864864423359769072789712788640926,
    0.741531185599394439863864773280788, 0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> wk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204, 0.104790010322250183839876322541518,
    0.140653259715525918745189590510238, 0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> wg = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                             0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Estimate {
    double value;
    double error;
};

inline Estimate rule(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    const double fc = f(c);
    double kron = fc * wk[7], gauss = fc * wg[3];
    for (int i = 0; i < 7; ++i) {
        const double x = h * xk[static_cast<std::size_t>(i)];
        const double s = f(c - x) + f(c + x);
        kron += wk[static_cast<std::size_t>(i)] * s;
        if (i % 2 == 1) gauss += wg[static_cast<std::size_t>(i / 2)] * s;
    }
    return {kron * h, std::abs((kron - gauss) * h)};
}

inline double adapt(const std::function<double(double)>& f, double a, double b, double tol, int depth) {
    const Estimate whole = rule(f, a, b);
    // The relative floor stops refinement once the estimate is at roundoff level.
    if (whole.error <= tol || whole.error <= 1e-15 * std::abs(whole.value) || depth >= 50) return whole.value;
    const double m = 0.5 * (a + b);
    return adapt(f, a, m, 0.5 * tol, depth + 1) + adapt(f, m, b, 0.5 * tol, depth + 1);
}

}  // namespace gk

inline double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-13) {
    return gk::adapt(f, a, b, tol, 0);
}

// ∫_{u1}^{2} du / (u sqrt(1 - u^2/4)) by quadrature, split at u = 1 so that
// both pieces have smooth integrands:
//   [1, 2]:  u = 2 - s^2 removes the endpoint singularity, giving 4 / (u sqrt(2 + u));
//   [u1, 1]: u = e^t removes the 1/u growth, giving 1 / sqrt(1 - e^{2t}/4).
inline double kappa_by_quadrature(double u1) {
    auto upper = [](double from) {
        return integrate(
            [](double s) {
                const double u = 2.0 - s * s;
                return 4.0 / (u * std::sqrt(2.0 + u));
            },
            0.0, std::sqrt(2.0 - from));
    };
    if (u1 >= 1.0) return upper(u1);
    const double lower = integrate(
        [](double t) {
            const double u = std::exp(t);
            return 1.0 / std::sqrt(1.0 - 0.25 * u * u);
        },
        std::log(u1), 0.0);
    return lower + upper(1.0);
}

// Off-diagonal of the λ-column matrix, re-derived from the level data:
// entries (ħ/2)^{3/2} sqrt((ℓ0 + 1 - k) k (n - k + 1)), k = 1..min(ℓ0, n).
inline std::vector<double> band(std::int64_t n, std::int64_t ell0) {
    const double hbar = 2.0 / static_cast<double>(n + 1);
    const double scale = std::sqrt(hbar / 2.0) * (hbar / 2.0);
    const std::int64_t mu = ell0 < n ? ell0 : n;
    std::vector<double> e;
    for (std::int64_t k = 1; k <= mu; ++k)
        e.push_back(scale * std::sqrt(static_cast<double>((ell0 + 1 - k) * k * (n - k + 1))));
    return e;
}

// D_k(x) = det(xI - T_k) for the zero-diagonal matrix with off-diagonal e:
// D_0 = 1, D_1 = x, D_k = x D_{k-1} - e_{k-1}^2 D_{k-2}.
inline double char_poly(const std::vector<double>& e, double x) {
    double prev = 1.0, cur = x;
    for (double ek : e) {
        const double next = x * cur - ek * ek * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

// All roots of the characteristic polynomial: sign changes on a fine grid over
// the Gershgorin interval, each refined by plain bisection.
inline std::vector<double> char_poly_roots(const std::vector<double>& e, int grid = 200000) {
    double radius = 0.0;
    for (std::size_t i = 0; i <= e.size(); ++i) {
        double r = 0.0;
        if (i > 0) r += std::abs(e[i - 1]);
        if (i < e.size()) r += std::abs(e[i]);
        radius = std::max(radius, r);
    }
    const double lo = -radius * 1.001 - 1e-300, hi = radius * 1.001 + 1e-300;
    std::vector<double> roots;
    double xa = lo, fa = char_poly(e, xa);
    for (int i = 1; i <= grid; ++i) {
        const double xb = lo + (hi - lo) * i / grid;
        const double fb = char_poly(e, xb);
        if (fb == 0.0) {
            roots.push_back(xb);
        } else if ((fa < 0) != (fb < 0) && fa != 0.0) {
            double a = xa, b = xb, f_a = fa;
            for (int it = 0; it < 200 && b - a > 0; ++it) {
                const double m = 0.5 * (a + b);
                if (m <= a || m >= b) break;
                const double fm = char_poly(e, m);
                if ((fm < 0) == (f_a < 0)) {
                    a = m;
                    f_a = fm;
                } else {
                    b = m;
                }
            }
            roots.push_back(0.5 * (a + b));
        }
        xa = xb;
        fa = fb;
    }
    return roots;
}

// ln |det T| for the zero-diagonal matrix of even size N = e.size() + 1:
// det = (-1)^{N/2} (e_1 e_3 ... e_{N-1})^2. Odd sizes have det = 0.
struct LogDet {
    double log_abs = 0.0;
    int sign = 0;
};

inline LogDet log_det_zero_diagonal(const std::vector<double>& e) {
    const std::size_t size = e.size() + 1;
    if (size % 2 == 1) return {-INFINITY, 0};
    LogDet d;
    for (std::size_t i = 0; i < e.size(); i += 2) d.log_abs += 2.0 * std::log(std::abs(e[i]));
    d.sign = (size / 2) % 2 == 0 ? 1 : -1;
    return d;
}

}  // namespace oracle
