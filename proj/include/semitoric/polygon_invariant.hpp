#pragma once

// Semitoric polygon and height invariants. A weighted polygon is stored as the
// region between a convex lower chain and a concave upper chain over an
// interval of j (possibly unbounded). The G x T action only adds functions of j
// to h, so it acts on the two chains independently.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "semitoric/quantum_spectrum.hpp"

namespace semitoric {

class admissibility_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

template <class Scalar>
double to_double(const Scalar& s) {
    if constexpr (std::is_arithmetic_v<Scalar>) {
        return static_cast<double>(s);
    } else {
        return static_cast<double>(s.numerator()) / static_cast<double>(s.denominator());
    }
}

template <class Scalar>
struct Point2 {
    Scalar j{};
    Scalar h{};
    friend bool operator==(const Point2&, const Point2&) = default;
};

template <class Scalar>
struct Ray2 {
    Point2<Scalar> origin;
    Point2<Scalar> direction;
    friend bool operator==(const Ray2&, const Ray2&) = default;
};

// Piecewise-linear function of j: breakpoints ascending in j, plus a tail slope
// for each unbounded side.
template <class Scalar>
struct Chain {
    std::vector<Point2<Scalar>> points;
    std::optional<Scalar> left_slope;   // set iff unbounded to the left
    std::optional<Scalar> right_slope;  // set iff unbounded to the right

    Scalar value(const Scalar& j) const {
        const auto& p = points;
        if (j <= p.front().j) {
            if (j == p.front().j) return p.front().h;
            if (!left_slope) throw std::domain_error("Chain::value: j left of a bounded chain");
            return p.front().h + *left_slope * (j - p.front().j);
        }
        if (j >= p.back().j) {
            if (j == p.back().j) return p.back().h;
            if (!right_slope) throw std::domain_error("Chain::value: j right of a bounded chain");
            return p.back().h + *right_slope * (j - p.back().j);
        }
        for (std::size_t i = 1; i < p.size(); ++i) {
            if (j <= p[i].j) {
                const Scalar slope = (p[i].h - p[i - 1].h) / (p[i].j - p[i - 1].j);
                return p[i - 1].h + slope * (j - p[i - 1].j);
            }
        }
        return p.back().h;
    }

    // Slopes in order: left tail (if any), segments, right tail (if any).
    std::vector<Scalar> slopes() const {
        std::vector<Scalar> s;
        if (left_slope) s.push_back(*left_slope);
        for (std::size_t i = 1; i < points.size(); ++i)
            s.push_back((points[i].h - points[i - 1].h) / (points[i].j - points[i - 1].j));
        if (right_slope) s.push_back(*right_slope);
        return s;
    }

    bool contains_j(const Scalar& j) const {
        return (left_slope || j >= points.front().j) && (right_slope || j <= points.back().j);
    }

    void insert_breakpoint(const Scalar& j) {
        if (!contains_j(j)) return;
        for (const auto& p : points)
            if (p.j == j) return;
        const Scalar h = value(j);
        auto it = std::find_if(points.begin(), points.end(), [&](const auto& p) { return p.j > j; });
        points.insert(it, Point2<Scalar>{j, h});
    }

    // Adds f(j) = a·j + b to the chain, or a·(j - c) + b only for j >= c when
    // `from` is set.
    void add_affine(const Scalar& a, const Scalar& b, const std::optional<Scalar>& from = std::nullopt) {
        if (from) insert_breakpoint(*from);
        for (auto& p : points)
            if (!from || p.j >= *from) p.h += a * (p.j - (from ? *from : Scalar(0))) + b;
        if (right_slope) *right_slope += a;
        if (left_slope && (!from || points.front().j > *from)) *left_slope += a;
    }

    // Drops interior breakpoints where the slope does not change. The first and
    // last breakpoints are kept when the chain is bounded on that side.
    void simplify() {
        std::vector<Point2<Scalar>> kept;
        for (std::size_t i = 0; i < points.size(); ++i) {
            const bool first = i == 0, last = i + 1 == points.size();
            if ((first && !left_slope) || (last && !right_slope)) {
                kept.push_back(points[i]);
                continue;
            }
            const Scalar in = first ? *left_slope
                                    : (points[i].h - kept.back().h) / (points[i].j - kept.back().j);
            const Scalar out = last ? *right_slope
                                    : (points[i + 1].h - points[i].h) / (points[i + 1].j - points[i].j);
            if (in != out) kept.push_back(points[i]);
        }
        if (kept.empty()) kept.push_back(points.front());
        points = std::move(kept);
    }
};

template <class Scalar>
class WeightedPolygon {
public:
    WeightedPolygon(Chain<Scalar> lower, Chain<Scalar> upper, Scalar cut, int epsilon)
        : lower_(std::move(lower)), upper_(std::move(upper)), cut_(cut), epsilon_(epsilon) {
        if (epsilon_ != 1 && epsilon_ != -1) throw std::invalid_argument("WeightedPolygon: epsilon must be +1 or -1");
        if (lower_.points.empty() || upper_.points.empty())
            throw std::invalid_argument("WeightedPolygon: chains need at least one breakpoint");
        if (lower_.left_slope.has_value() != upper_.left_slope.has_value() ||
            lower_.right_slope.has_value() != upper_.right_slope.has_value())
            throw std::invalid_argument("WeightedPolygon: chains must share the j-domain");
        if (!lower_.left_slope && lower_.points.front().j != upper_.points.front().j)
            throw std::invalid_argument("WeightedPolygon: chains must start at the same j");
        if (!lower_.right_slope && lower_.points.back().j != upper_.points.back().j)
            throw std::invalid_argument("WeightedPolygon: chains must end at the same j");
        if (!lower_.left_slope && !lower_.right_slope && lower_.points.front().j == lower_.points.back().j)
            throw std::invalid_argument("WeightedPolygon: degenerate j-interval");
        lower_.simplify();
        upper_.simplify();
    }

    // Axis-aligned box [j0, j1] x [h0, h1].
    static WeightedPolygon box(Scalar j0, Scalar j1, Scalar h0, Scalar h1, Scalar cut, int epsilon) {
        Chain<Scalar> lo{{{j0, h0}, {j1, h0}}, std::nullopt, std::nullopt};
        Chain<Scalar> up{{{j0, h1}, {j1, h1}}, std::nullopt, std::nullopt};
        return WeightedPolygon(std::move(lo), std::move(up), cut, epsilon);
    }

    const Chain<Scalar>& lower() const noexcept { return lower_; }
    const Chain<Scalar>& upper() const noexcept { return upper_; }
    const Scalar& cut() const noexcept { return cut_; }
    int epsilon() const noexcept { return epsilon_; }

    std::optional<Scalar> j_min() const {
        return lower_.left_slope ? std::nullopt : std::optional<Scalar>(lower_.points.front().j);
    }
    std::optional<Scalar> j_max() const {
        return lower_.right_slope ? std::nullopt : std::optional<Scalar>(lower_.points.back().j);
    }

    // Lower chain convex, upper chain concave, lower <= upper.
    bool is_convex() const {
        const auto lo = lower_.slopes();
        for (std::size_t i = 1; i < lo.size(); ++i)
            if (lo[i] < lo[i - 1]) return false;
        const auto up = upper_.slopes();
        for (std::size_t i = 1; i < up.size(); ++i)
            if (up[i] > up[i - 1]) return false;
        for (const auto& p : lower_.points)
            if (upper_.value(p.j) < p.h) return false;
        for (const auto& p : upper_.points)
            if (lower_.value(p.j) > p.h) return false;
        if (lower_.right_slope && *lower_.right_slope > *upper_.right_slope) return false;
        if (lower_.left_slope && *lower_.left_slope < *upper_.left_slope) return false;
        return true;
    }

    // Vertical slice at j: (min h, max h).
    std::pair<Scalar, Scalar> slice(const Scalar& j) const { return {lower_.value(j), upper_.value(j)}; }

    // Corner points in counter-clockwise order: lower chain left to right,
    // then upper chain right to left. A bounded end contributes two corners
    // unless the slice there is a single point.
    std::vector<Point2<Scalar>> vertices() const {
        std::vector<Point2<Scalar>> out;
        auto push = [&](const Point2<Scalar>& p) {
            if (out.empty() || !(out.back() == p)) out.push_back(p);
        };
        for (const auto& p : lower_.points) push(p);
        for (auto it = upper_.points.rbegin(); it != upper_.points.rend(); ++it) push(*it);
        if (out.size() > 1 && out.front() == out.back()) out.pop_back();
        return out;
    }

    // Unbounded edges: directions (1, slope) on the right, (-1, -slope) on the left.
    std::vector<Ray2<Scalar>> rays() const {
        std::vector<Ray2<Scalar>> out;
        if (lower_.right_slope) {
            out.push_back({lower_.points.back(), {Scalar(1), *lower_.right_slope}});
            out.push_back({upper_.points.back(), {Scalar(1), *upper_.right_slope}});
        }
        if (lower_.left_slope) {
            out.push_back({upper_.points.front(), {Scalar(-1), -*upper_.left_slope}});
            out.push_back({lower_.points.front(), {Scalar(-1), -*lower_.left_slope}});
        }
        return out;
    }

    // Bounded copy restricted to j <= j_max.
    WeightedPolygon clipped(const Scalar& j_max) const {
        auto clip = [&](Chain<Scalar> c) {
            c.insert_breakpoint(j_max);
            std::erase_if(c.points, [&](const auto& p) { return p.j > j_max; });
            c.right_slope.reset();
            return c;
        };
        return WeightedPolygon(clip(lower_), clip(upper_), cut_, epsilon_);
    }

    // T^k: (j, h) -> (j, h + k j), followed by an optional vertical translation.
    WeightedPolygon sheared(const Scalar& k, const Scalar& shift = Scalar(0)) const {
        WeightedPolygon out = *this;
        out.lower_.add_affine(k, shift);
        out.upper_.add_affine(k, shift);
        out.lower_.simplify();
        out.upper_.simplify();
        return out;
    }

    // t_u at the cut: identity on the left, T^u relative to the cut on the right.
    WeightedPolygon cut_sheared(const Scalar& u) const {
        WeightedPolygon out = *this;
        out.lower_.add_affine(u, Scalar(0), cut_);
        out.upper_.add_affine(u, Scalar(0), cut_);
        out.lower_.simplify();
        out.upper_.simplify();
        return out;
    }

    WeightedPolygon with_epsilon(int eps) const {
        WeightedPolygon out = *this;
        out.epsilon_ = eps;
        return out;
    }

    friend bool operator==(const WeightedPolygon& a, const WeightedPolygon& b) {
        return a.vertices() == b.vertices() && a.rays() == b.rays() && a.cut_ == b.cut_ && a.epsilon_ == b.epsilon_;
    }

private:
    Chain<Scalar> lower_;
    Chain<Scalar> upper_;
    Scalar cut_;
    int epsilon_;
};

// Action of (ε', T^k) on (Δ, ℓ, ε): Δ -> t_u(T^k Δ) with u = (ε - ε')/2; the
// new sign is ε'. Throws admissibility_error if the result is not convex.
template <class Scalar>
WeightedPolygon<Scalar> group_action(const WeightedPolygon<Scalar>& p, int eps_prime, std::int64_t k,
                                     const Scalar& vertical_shift = Scalar(0)) {
    if (eps_prime != 1 && eps_prime != -1) throw std::invalid_argument("group_action: eps_prime must be +1 or -1");
    const int u = (p.epsilon() - eps_prime) / 2;
    auto out = p.sheared(Scalar(k), vertical_shift).cut_sheared(Scalar(u)).with_epsilon(eps_prime);
    if (!out.is_convex())
        throw admissibility_error("group_action: the sign change does not preserve convexity");
    return out;
}

// The two representatives for the coupled spin-oscillator, with cut at j = 1:
// ε = -1: corners (-1,0), (1,0), slope-1 rays from both;
// ε = +1: corners (-1,0), (1,2), horizontal rays.
template <class Scalar = double>
WeightedPolygon<Scalar> reference_polygon(int epsilon) {
    using P = Point2<Scalar>;
    const Scalar m1(-1), z(0), one(1), two(2);
    if (epsilon == -1) {
        Chain<Scalar> lo{{P{m1, z}, P{one, z}}, std::nullopt, one};
        Chain<Scalar> up{{P{m1, z}}, std::nullopt, one};
        return WeightedPolygon<Scalar>(std::move(lo), std::move(up), one, -1);
    }
    if (epsilon == 1) {
        Chain<Scalar> lo{{P{m1, z}}, std::nullopt, z};
        Chain<Scalar> up{{P{m1, z}, P{one, two}}, std::nullopt, z};
        return WeightedPolygon<Scalar>(std::move(lo), std::move(up), one, 1);
    }
    throw std::invalid_argument("reference_polygon: epsilon must be +1 or -1");
}

// Half the length of the vertical slice through the focus-focus value.
template <class Scalar>
Scalar polygon_height(const WeightedPolygon<Scalar>& p) {
    const auto [lo, hi] = p.slice(p.cut());
    return (hi - lo) / Scalar(2);
}

// ----------------------------------------------------------------------------
// Planar helpers on double-precision vertex lists.

using PointD = Point2<double>;

// Andrew's monotone chain; counter-clockwise, collinear points dropped.
inline std::vector<PointD> convex_hull(std::vector<PointD> pts) {
    std::sort(pts.begin(), pts.end(), [](const PointD& a, const PointD& b) {
        return a.j < b.j || (a.j == b.j && a.h < b.h);
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;
    auto cross = [](const PointD& o, const PointD& a, const PointD& b) {
        return (a.j - o.j) * (b.h - o.h) - (a.h - o.h) * (b.j - o.j);
    };
    std::vector<PointD> hull(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 1e-14) --k;
        hull[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 1e-14) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

// Distance from q to a convex polygon given counter-clockwise (0 inside).
inline double distance_to_convex(const PointD& q, const std::vector<PointD>& poly) {
    if (poly.empty()) return std::numeric_limits<double>::infinity();
    if (poly.size() == 1) return std::hypot(q.j - poly[0].j, q.h - poly[0].h);
    bool inside = poly.size() >= 3;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const PointD& a = poly[i];
        const PointD& b = poly[(i + 1) % poly.size()];
        const double ej = b.j - a.j, eh = b.h - a.h;
        if (ej * (q.h - a.h) - eh * (q.j - a.j) < -1e-12) inside = false;
        const double len2 = ej * ej + eh * eh;
        double t = len2 > 0 ? ((q.j - a.j) * ej + (q.h - a.h) * eh) / len2 : 0.0;
        t = std::clamp(t, 0.0, 1.0);
        best = std::min(best, std::hypot(q.j - (a.j + t * ej), q.h - (a.h + t * eh)));
    }
    return inside ? 0.0 : best;
}

// Hausdorff distance of two convex polygons; attained at a vertex of one of them.
inline double hausdorff_convex(const std::vector<PointD>& a, const std::vector<PointD>& b) {
    double d = 0.0;
    for (const auto& p : a) d = std::max(d, distance_to_convex(p, b));
    for (const auto& p : b) d = std::max(d, distance_to_convex(p, a));
    return d;
}

template <class Scalar>
std::vector<PointD> vertices_as_double(const WeightedPolygon<Scalar>& p) {
    std::vector<PointD> out;
    for (const auto& v : p.vertices()) out.push_back({to_double(v.j), to_double(v.h)});
    return out;
}

// ----------------------------------------------------------------------------
// Development of the joint spectrum onto ħZ^2.

struct DevelopedLattice {
    double hbar = 0.0;
    double cut = 0.0;
    int epsilon = -1;
    std::int64_t shear_left = 0;   // integer slope of the column bottoms left of the cut
    std::int64_t shear_right = 0;  // and right of the cut
    std::vector<double> column_lambdas;
    std::vector<std::size_t> column_sizes;
    std::vector<PointD> points;  // column by column, ascending h within a column
};

inline constexpr std::size_t development_window = 4;
inline constexpr std::int64_t development_shear_range = 3;

namespace detail {

// Residual sum of squares of the least-squares line through the points.
inline double line_fit_residual(const std::vector<PointD>& pts) {
    if (pts.size() < 3) return 0.0;
    double sj = 0, sh = 0;
    for (const auto& p : pts) {
        sj += p.j;
        sh += p.h;
    }
    const double mj = sj / pts.size(), mh = sh / pts.size();
    double sjj = 0, sjh = 0, shh = 0;
    for (const auto& p : pts) {
        sjj += (p.j - mj) * (p.j - mj);
        sjh += (p.j - mj) * (p.h - mh);
        shh += (p.h - mh) * (p.h - mh);
    }
    return sjj > 0 ? std::max(0.0, shh - sjh * sjh / sjj) : shh;
}

}  // namespace detail

// Re-indexes each column onto consecutive multiples of ħ. Columns on the anchor
// side (λ <= cut) share one bottom line through the first column's bottom
// (rounded to ħZ). Across the cut the bottom line continues with an integer
// slope chosen to make the boundary on the uncut side (top for ε = -1,
// bottom for ε = +1) as straight as possible.
inline DevelopedLattice develop_spectrum(const JointSpectrum& js, double cut_lambda, int epsilon) {
    if (js.columns.size() < 2) throw std::invalid_argument("develop_spectrum: need at least two columns");
    if (epsilon != 1 && epsilon != -1) throw std::invalid_argument("develop_spectrum: epsilon must be +1 or -1");
    const double hbar = js.hbar;
    const double tol = 1e-9;

    DevelopedLattice out;
    out.hbar = hbar;
    out.cut = cut_lambda;
    out.epsilon = epsilon;

    const auto& first = js.columns.front();
    const double lambda0 = first.lambda;
    const double b0 = hbar * std::round(first.nus.front() / hbar);
    const std::int64_t s_left = 0;
    out.shear_left = s_left;

    std::size_t split = 0;  // first column strictly right of the cut
    while (split < js.columns.size() && js.columns[split].lambda <= cut_lambda + tol) ++split;

    const bool crosses = split > 0 && split < js.columns.size();
    const double base_at_cut = b0 + static_cast<double>(s_left) * (cut_lambda - lambda0);

    auto base = [&](double lambda, std::int64_t s_right) {
        if (!crosses || lambda <= cut_lambda + tol) return b0 + static_cast<double>(s_left) * (lambda - lambda0);
        return base_at_cut + static_cast<double>(s_right) * (lambda - cut_lambda);
    };
    auto boundary_point = [&](std::size_t i, std::int64_t s_right) {
        const auto& c = js.columns[i];
        const double bottom = base(c.lambda, s_right);
        const double h = epsilon == -1 ? bottom + hbar * static_cast<double>(c.nus.size() - 1) : bottom;
        return PointD{c.lambda, h};
    };

    std::int64_t s_right = s_left;
    if (crosses) {
        const std::size_t lo = split >= development_window ? split - development_window : 0;
        const std::size_t hi = std::min(js.columns.size(), split + development_window);
        double best = std::numeric_limits<double>::infinity();
        for (std::int64_t d = 0; d <= development_shear_range; ++d) {
            for (std::int64_t s : {s_left + d, s_left - d}) {
                std::vector<PointD> pts;
                for (std::size_t i = lo; i < hi; ++i) pts.push_back(boundary_point(i, s));
                const double r = detail::line_fit_residual(pts);
                if (d == 0 || r < best - 1e-12 * (1.0 + best)) {
                    best = r;
                    s_right = s;
                }
                if (d == 0) break;
            }
        }
    }
    out.shear_right = s_right;

    for (const auto& c : js.columns) {
        const double bottom = base(c.lambda, s_right);
        out.column_lambdas.push_back(c.lambda);
        out.column_sizes.push_back(c.nus.size());
        for (std::size_t i = 0; i < c.nus.size(); ++i) out.points.push_back({c.lambda, bottom + hbar * static_cast<double>(i)});
    }
    return out;
}

// Hausdorff distance between the hull of the developed points with λ <= j_max
// and the ε-reference polygon clipped at j_max.
inline double developed_hull_distance(const DevelopedLattice& lattice, double j_max = 3.0) {
    std::vector<PointD> pts;
    for (const auto& p : lattice.points)
        if (p.j <= j_max + 1e-9) pts.push_back(p);
    const auto hull = convex_hull(std::move(pts));
    const auto ref = vertices_as_double(reference_polygon<double>(lattice.epsilon).clipped(j_max));
    return hausdorff_convex(hull, ref);
}

struct HeightEstimate {
    double plateau_lambda = 0.0;  // first abscissa where the column dimension stops growing
    std::int64_t dimension = 0;
    double column_height = 0.0;  // (dimension - 1) ħ
    double height = 0.0;         // half of the column height
};

// Quantum Duistermaat–Heckman estimate of the height invariant.
inline HeightEstimate height_estimate(const JointSpectrum& js, const QuantumParams& params) {
    const double hbar = params.hbar();
    for (std::size_t i = 0; i + 1 < js.columns.size(); ++i) {
        const auto& a = js.columns[i];
        const auto& b = js.columns[i + 1];
        if (a.nus.size() == b.nus.size()) {
            HeightEstimate e;
            e.plateau_lambda = a.lambda;
            e.dimension = static_cast<std::int64_t>(a.nus.size());
            e.column_height = static_cast<double>(e.dimension - 1) * hbar;
            e.height = e.column_height / 2.0;
            return e;
        }
    }
    throw std::domain_error("height_estimate: no dimension plateau in the spectrum range");
}

}  // namespace semitoric
