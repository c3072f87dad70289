#pragma once

// Text serialization of spectra, recovery series, polygons and invariants.
// Every writer is a pure function of its input, so repeated runs are
// byte-identical.

#include <cstdio>
#include <ostream>
#include <string>

#include "json.hpp"

#include "semitoric/inverse_spectral.hpp"
#include "semitoric/polygon_invariant.hpp"
#include "semitoric/quantum_spectrum.hpp"
#include "semitoric/taylor_invariant.hpp"

namespace semitoric::io {

inline std::string fmt_g(double x, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return buf;
}

inline void write_spectrum_csv(std::ostream& os, const JointSpectrum& js) {
    os << "lambda,nu\n";
    for (const auto& c : js.columns)
        for (double nu : c.nus) os << fmt_g(c.lambda, 17) << ',' << fmt_g(nu, 17) << '\n';
}

inline nlohmann::ordered_json spectrum_json(const JointSpectrum& js) {
    nlohmann::ordered_json out;
    out["n"] = js.n;
    out["hbar"] = js.hbar;
    auto cols = nlohmann::ordered_json::array();
    for (const auto& c : js.columns) {
        nlohmann::ordered_json col;
        col["lambda"] = c.lambda;
        col["ell0"] = c.ell0;
        col["nus"] = c.nus;
        cols.push_back(std::move(col));
    }
    out["columns"] = std::move(cols);
    return out;
}

inline void write_sigma_csv(std::ostream& os, const std::vector<double>& sigma) {
    os << "index,nu\n";
    for (std::size_t i = 0; i < sigma.size(); ++i) os << i << ',' << fmt_g(sigma[i], 17) << '\n';
}

// In blind mode the error columns are left empty.
inline void write_recovery_csv(std::ostream& os, const RecoverySeries& s, bool blind = false) {
    os << "k,n,hbar,t_min,b22_simple,b22_accel,a2,a2_over_ln2,err_b22,err_a2\n";
    for (const auto& r : s.rows) {
        os << r.k << ',' << r.n << ',' << fmt_g(r.hbar, 12) << ',' << fmt_g(r.t_min, 12) << ','
           << fmt_g(r.b22_simple, 12) << ',' << fmt_g(r.b22_accel, 12) << ',' << fmt_g(r.a2, 12) << ','
           << fmt_g(r.a2_over_ln2, 12) << ',';
        if (!blind) os << fmt_g(r.err_b22, 12) << ',' << fmt_g(r.err_a2, 12);
        else os << ',';
        os << '\n';
    }
}

template <class Scalar>
nlohmann::ordered_json polygon_json(const WeightedPolygon<Scalar>& p) {
    nlohmann::ordered_json out;
    auto verts = nlohmann::ordered_json::array();
    for (const auto& v : p.vertices()) verts.push_back({to_double(v.j), to_double(v.h)});
    auto rays = nlohmann::ordered_json::array();
    for (const auto& r : p.rays()) {
        rays.push_back({{"origin", {to_double(r.origin.j), to_double(r.origin.h)}},
                        {"direction", {to_double(r.direction.j), to_double(r.direction.h)}}});
    }
    out["vertices"] = std::move(verts);
    out["rays"] = std::move(rays);
    out["epsilon"] = p.epsilon();
    out["cut"] = to_double(p.cut());
    return out;
}

inline void write_developed_csv(std::ostream& os, const DevelopedLattice& d) {
    os << "lambda,nu_developed\n";
    for (const auto& p : d.points) os << fmt_g(p.j, 17) << ',' << fmt_g(p.h, 17) << '\n';
}

inline nlohmann::ordered_json invariants_json(const InvariantResult& r) {
    nlohmann::ordered_json out;
    out["a1"] = r.a1;
    out["a2"] = r.a2;
    out["a2_over_ln2"] = r.a2 / ln2;
    auto diag = nlohmann::ordered_json::array();
    for (const auto& [u, f] : r.diagnostics) diag.push_back({{"u", u}, {"bracket", f}});
    out["diagnostics"] = std::move(diag);
    return out;
}

}  // namespace semitoric::io
