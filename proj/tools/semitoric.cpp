// semitoric: command-line front end for the coupled spin-oscillator toolkit.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "semitoric/classical_core.hpp"
#include "semitoric/constants.hpp"
#include "semitoric/inverse_spectral.hpp"
#include "semitoric/io.hpp"
#include "semitoric/polygon_invariant.hpp"
#include "semitoric/quantum_spectrum.hpp"
#include "semitoric/svg_plot.hpp"
#include "semitoric/taylor_invariant.hpp"

namespace {

using namespace semitoric;

struct RunConfig {
    std::int64_t n = 13;
    int k_min = 1;
    int k_max = 9;
    double lambda_min = -1.0;
    double lambda_max = 3.0;
    double tol = 1e-12;
    std::string output;
    std::string format = "csv";
    std::string plot_prefix;
    bool blind = false;
    bool use_true_b22 = false;
    int epsilon = -1;
    double j_max = 3.0;
    bool develop = false;
    std::uint64_t seed = 12345;
};

// Failure of a module invariant: reported with the module name, exit status 1.
struct invariant_failure : std::runtime_error {
    invariant_failure(const std::string& module, const std::string& what)
        : std::runtime_error(module + ": invariant violated: " + what) {}
};

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(cfg.output, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file " + cfg.output);
    f << text;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file " + path);
    f << text;
}

SpectrumOptions spectrum_options(const RunConfig& cfg) {
    SpectrumOptions opt;
    opt.tol = std::min(cfg.tol, 1e-15);
    return opt;
}

void check_columns(const QuantumParams& params, const JointSpectrum& js) {
    for (const auto& c : js.columns) {
        const auto dim = static_cast<std::size_t>(eigenspace_dim(params, c.lambda));
        if (c.nus.size() != dim)
            throw invariant_failure("quantum_spectrum", "column size differs from dim ker(J - lambda) at lambda = " +
                                                            io::fmt_g(c.lambda, 17));
        const std::size_t m = c.nus.size();
        const double scale = std::max(1.0, std::abs(c.nus.back()));
        for (std::size_t i = 0; i < m; ++i)
            if (std::abs(c.nus[i] + c.nus[m - 1 - i]) > 1e-10 * scale)
                throw invariant_failure("quantum_spectrum", "column spectrum not symmetric at lambda = " +
                                                                io::fmt_g(c.lambda, 17));
    }
}

int run_spectrum(const RunConfig& cfg) {
    const QuantumParams params(cfg.n);
    const auto js = joint_spectrum(params, cfg.lambda_min, cfg.lambda_max, spectrum_options(cfg));
    check_columns(params, js);

    std::ostringstream os;
    if (cfg.format == "csv") {
        io::write_spectrum_csv(os, js);
    } else if (cfg.format == "json") {
        os << io::spectrum_json(js).dump(2) << '\n';
    } else {
        svg::Plot plot;
        plot.title = "Joint spectrum, n = " + std::to_string(cfg.n);
        plot.x_label = "J";
        plot.y_label = "H";
        svg::Series pts{"eigenvalues", {}, "#1f77b4", true, false, 1.5};
        for (const auto& c : js.columns)
            for (double nu : c.nus) pts.points.emplace_back(c.lambda, nu);
        svg::Series upper{"image boundary", {}, "#d62728", false, true, 1.0};
        svg::Series lower{"", {}, "#d62728", false, true, 1.0};
        for (int i = 0; i <= 400; ++i) {
            const double s = 1.0 + 0.02 * i;
            const auto b = boundary_curve(s);
            if (b.upper.j > cfg.lambda_max) break;
            upper.points.emplace_back(b.upper.j, b.upper.h);
            lower.points.emplace_back(b.lower.j, b.lower.h);
        }
        plot.series = {pts, upper, lower};
        svg::render(os, plot);
    }
    emit(cfg, os.str());
    return 0;
}

int run_sigma(const RunConfig& cfg) {
    const QuantumParams params(cfg.n);
    const auto sigma = sigma_n(params, spectrum_options(cfg));
    if (static_cast<std::int64_t>(sigma.size()) != cfg.n + 1)
        throw invariant_failure("quantum_spectrum", "|Sigma(n)| != n + 1");
    const double scale = std::max(1.0, std::abs(sigma.back()));
    for (std::size_t i = 0; i < sigma.size(); ++i)
        if (std::abs(sigma[i] + sigma[sigma.size() - 1 - i]) > 1e-10 * scale)
            throw invariant_failure("quantum_spectrum", "Sigma(n) != -Sigma(n)");

    std::ostringstream os;
    if (cfg.format == "json") {
        nlohmann::ordered_json j;
        j["n"] = cfg.n;
        j["hbar"] = params.hbar();
        j["sigma"] = sigma;
        os << j.dump(2) << '\n';
    } else {
        io::write_sigma_csv(os, sigma);
    }
    emit(cfg, os.str());
    return 0;
}

int run_invariants(const RunConfig& cfg) {
    const auto r = taylor_invariants(std::max(cfg.tol, 1e-14));
    emit(cfg, io::invariants_json(r).dump(2) + "\n");
    if (!(std::abs(r.a1 - true_a1) < 1e-9))
        throw invariant_failure("taylor_invariant", "a1 differs from pi/2 by more than 1e-9");
    if (!(std::abs(r.a2 - true_a2) < 1e-8))
        throw invariant_failure("taylor_invariant", "a2 differs from 5 ln 2 by more than 1e-8");
    return 0;
}

int run_recover(const RunConfig& cfg) {
    const auto series = convergence_study(cfg.k_min, cfg.k_max, cfg.use_true_b22, spectrum_options(cfg));
    std::ostringstream os;
    io::write_recovery_csv(os, series, cfg.blind);
    emit(cfg, os.str());

    if (!cfg.plot_prefix.empty()) {
        svg::Plot b;
        b.title = "B22 recovery";
        b.x_label = "hbar";
        b.y_label = "B22 estimate";
        b.log_x = true;
        svg::Series simple{"simple", {}, "#1f77b4", true, true, 3.0};
        svg::Series accel{"accelerated", {}, "#d62728", true, true, 3.0};
        svg::Plot a;
        a.title = "a2 recovery";
        a.x_label = "hbar";
        a.y_label = "a2 / ln 2";
        a.log_x = true;
        svg::Series a2{"a2 / ln 2", {}, "#2ca02c", true, true, 3.0};
        for (const auto& r : series.rows) {
            simple.points.emplace_back(r.hbar, r.b22_simple);
            accel.points.emplace_back(r.hbar, r.b22_accel);
            a2.points.emplace_back(r.hbar, r.a2_over_ln2);
        }
        b.series = {simple, accel};
        a.series = {a2};
        if (!cfg.blind) {
            b.hlines.emplace_back(true_b22, 0.0);
            a.hlines.emplace_back(true_a2 / ln2, 0.0);
        }
        std::ostringstream sb, sa;
        svg::render(sb, b);
        svg::render(sa, a);
        write_file(cfg.plot_prefix + "_b22.svg", sb.str());
        write_file(cfg.plot_prefix + "_a2.svg", sa.str());
    }

    for (const auto& r : series.rows) {
        if (!std::isfinite(r.b22_accel) || !std::isfinite(r.a2))
            throw invariant_failure("inverse_spectral", "non-finite estimate at k = " + std::to_string(r.k));
        if (!(r.t_min > 0.0))
            throw invariant_failure("inverse_spectral", "t_min must be positive at k = " + std::to_string(r.k));
    }
    return 0;
}

int run_polygon(const RunConfig& cfg) {
    if (cfg.epsilon != 1 && cfg.epsilon != -1) throw CLI::ValidationError("--epsilon", "must be +1 or -1");
    const auto poly = reference_polygon<double>(cfg.epsilon);
    if (!cfg.develop) {
        emit(cfg, io::polygon_json(poly).dump(2) + "\n");
        if (polygon_height(poly) != true_height)
            throw invariant_failure("polygon_invariant", "classical height differs from 1");
        return 0;
    }

    const QuantumParams params(cfg.n);
    const auto js = joint_spectrum(params, -1.0, cfg.j_max, spectrum_options(cfg));
    const auto dev = develop_spectrum(js, focus_j, cfg.epsilon);
    if (dev.points.size() != js.point_count())
        throw invariant_failure("polygon_invariant", "development changed the number of points");

    std::ostringstream os;
    if (cfg.format == "json") {
        const auto h = height_estimate(js, params);
        nlohmann::ordered_json j;
        j["polygon"] = io::polygon_json(poly);
        j["n"] = cfg.n;
        j["hbar"] = params.hbar();
        j["shear_left"] = dev.shear_left;
        j["shear_right"] = dev.shear_right;
        j["hull_distance"] = developed_hull_distance(dev, cfg.j_max);
        j["height"] = {{"plateau_lambda", h.plateau_lambda},
                       {"column_height", h.column_height},
                       {"height", h.height}};
        os << j.dump(2) << '\n';
    } else {
        io::write_developed_csv(os, dev);
    }
    emit(cfg, os.str());
    return 0;
}

int run_classical_verify(const RunConfig& cfg) {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0), angle(-pi, pi);

    double bracket = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double z = unit(rng);
        const auto p = PhasePoint::from_height_angle(z, angle(rng), 3.0 * unit(rng), 3.0 * unit(rng));
        bracket = std::max(bracket, std::abs(poisson_bracket_JH(p)));
    }

    double fiber = 0.0;
    for (int a = 0; a < 100; ++a)
        for (int b = 0; b < 100; ++b) {
            const double zt = -1.0 + 2.0 * a / 99.0;
            const double tt = -pi + 2.0 * pi * b / 99.0;
            for (int eps : {1, -1}) {
                const auto f = momentum_map(singular_fiber({zt, tt, eps}));
                fiber = std::max({fiber, std::abs(f.j - focus_j), std::abs(f.h - focus_h)});
            }
        }

    double drift = 0.0;
    for (int i = 0; i < 10; ++i) {
        const auto p0 = PhasePoint::from_height_angle(0.8 * unit(rng), angle(rng), unit(rng), unit(rng));
        const auto f0 = momentum_map(p0);
        const auto run = flow_H(p0, 1.0, 1e-3);
        for (const auto& p : run.trajectory) {
            const auto f = momentum_map(p);
            drift = std::max({drift, std::abs(f.j - f0.j), std::abs(f.h - f0.h)});
        }
    }

    nlohmann::ordered_json j;
    j["max_abs_bracket"] = bracket;
    j["max_fiber_deviation"] = fiber;
    j["max_flow_drift"] = drift;
    emit(cfg, j.dump(2) + "\n");

    if (!(bracket < 1e-10)) throw invariant_failure("classical_core", "|{J,H}| >= 1e-10");
    if (!(fiber < 1e-10)) throw invariant_failure("classical_core", "singular fiber leaves F^{-1}(1,0)");
    if (!(drift < 1e-8)) throw invariant_failure("classical_core", "flow does not conserve (J,H) to 1e-8");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Semitoric invariants of the coupled spin-oscillator"};
    app.set_config("--config", "", "Flat key = value configuration file");
    app.require_subcommand(1);

    RunConfig cfg;
    app.add_option("--n", cfg.n, "Quantum level n (hbar = 2/(n+1))")->check(CLI::NonNegativeNumber);
    app.add_option("--k-min", cfg.k_min, "First level k (n = 2^k + 1)")->check(CLI::Range(1, max_study_level));
    app.add_option("--k-max", cfg.k_max, "Last level k")->check(CLI::Range(1, max_study_level));
    app.add_option("--lambda-min", cfg.lambda_min, "Lower end of the J range");
    app.add_option("--lambda-max", cfg.lambda_max, "Upper end of the J range");
    app.add_option("--tol", cfg.tol, "Tolerance")->check(CLI::PositiveNumber);
    app.add_option("--output,-o", cfg.output, "Output file (default: stdout)");
    app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json", "svg"}));
    app.add_option("--plot-prefix", cfg.plot_prefix, "recover: write <prefix>_b22.svg and <prefix>_a2.svg");
    app.add_flag("--blind", cfg.blind, "recover: omit deviations from the known values");
    app.add_flag("--use-true-b22", cfg.use_true_b22, "recover: use B22 = 2 in the a2 estimate");
    app.add_option("--epsilon", cfg.epsilon, "polygon: cut sign (+1 or -1)")->check(CLI::IsMember({-1, 1}));
    app.add_option("--j-max", cfg.j_max, "polygon: right end of the developed range");
    app.add_flag("--develop", cfg.develop, "polygon: develop the joint spectrum at level n");
    app.add_option("--seed", cfg.seed, "classical-verify: random seed");

    auto* spectrum = app.add_subcommand("spectrum", "Joint spectrum in a J range")->fallthrough();
    auto* sigma = app.add_subcommand("sigma", "Spectrum of H on ker(J - 1)")->fallthrough();
    auto* invariants = app.add_subcommand("invariants", "Taylor series invariants a1, a2")->fallthrough();
    auto* recover = app.add_subcommand("recover", "Recover B22 and a2 from spectra")->fallthrough();
    auto* polygon = app.add_subcommand("polygon", "Polygon invariant and developed spectrum")->fallthrough();
    auto* classical = app.add_subcommand("classical-verify", "Classical consistency checks")->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (cfg.k_min > cfg.k_max) throw CLI::ValidationError("--k-min", "must not exceed --k-max");
        if (*spectrum) return run_spectrum(cfg);
        if (*sigma) return run_sigma(cfg);
        if (*invariants) return run_invariants(cfg);
        if (*recover) return run_recover(cfg);
        if (*polygon) return run_polygon(cfg);
        if (*classical) return run_classical_verify(cfg);
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const invariant_failure& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
