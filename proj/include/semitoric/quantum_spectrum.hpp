#pragma once

// Quantum coupled spin-oscillator. For E = 2 = ħ(n+1), Ĵ has spectrum
// ħ((1-n)/2 + ℕ) and on each eigenspace Ĥ is the zero-diagonal tridiagonal
// matrix (ħ/2)^{3/2} tridiag(β_k), β_k = sqrt((ℓ0 + 1 - k) k (n - k + 1)).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "semitoric/parallel.hpp"
#include "semitoric/tridiagonal.hpp"

namespace semitoric {

class QuantumParams {
public:
    explicit QuantumParams(std::int64_t n) : n_(n) {
        if (n < 0) throw std::domain_error("QuantumParams: level n must be non-negative");
        if (n > (std::int64_t{1} << 30)) throw std::domain_error("QuantumParams: level n too large");
    }

    std::int64_t n() const noexcept { return n_; }
    double hbar() const noexcept { return 2.0 / static_cast<double>(n_ + 1); }

    // λ_m = ħ((1-n)/2 + m) = (2m + 1 - n)/(n + 1), one rounding.
    double j_eigenvalue(std::int64_t m) const noexcept {
        return static_cast<double>(2 * m + 1 - n_) / static_cast<double>(n_ + 1);
    }

    // ℓ0 = λ/ħ + (n-1)/2 as a real number.
    double ell0_real(double lambda) const noexcept {
        return lambda * static_cast<double>(n_ + 1) / 2.0 + static_cast<double>(n_ - 1) / 2.0;
    }

    friend bool operator==(const QuantumParams&, const QuantumParams&) = default;

private:
    std::int64_t n_;
};

inline constexpr double eigenvalue_membership_tolerance = 1e-9;

// ℓ0 for λ, which must be a Ĵ-eigenvalue.
inline std::int64_t ell0_of(const QuantumParams& params, double lambda) {
    const double x = params.ell0_real(lambda);
    const double r = std::round(x);
    if (!std::isfinite(x) || std::abs(x - r) > eigenvalue_membership_tolerance || r < 0)
        throw std::domain_error("lambda = " + std::to_string(lambda) + " is not an eigenvalue of J for n = " +
                                std::to_string(params.n()));
    return static_cast<std::int64_t>(r);
}

// The first `count` Ĵ-eigenvalues, ascending.
inline std::vector<double> j_eigenvalues(const QuantumParams& params, std::int64_t count) {
    if (count < 1) throw std::invalid_argument("j_eigenvalues: count must be >= 1");
    std::vector<double> out(static_cast<std::size_t>(count));
    for (std::int64_t m = 0; m < count; ++m) out[static_cast<std::size_t>(m)] = params.j_eigenvalue(m);
    return out;
}

// dim ker(Ĵ - λ) = 1 + min(n, ℓ0).
inline std::int64_t eigenspace_dim(const QuantumParams& params, double lambda) {
    return 1 + std::min(params.n(), ell0_of(params, lambda));
}

struct BandMatrix {
    std::int64_t n = 0;
    double hbar = 0.0;
    std::int64_t ell0 = 0;
    std::int64_t mu = 0;        // size is mu + 1
    std::vector<double> beta;   // β_1 .. β_mu, before scaling
    double scale = 0.0;         // (ħ/2)^{3/2}

    std::size_t size() const noexcept { return static_cast<std::size_t>(mu + 1); }

    std::vector<double> off_diagonal() const {
        std::vector<double> off(beta.size());
        for (std::size_t i = 0; i < beta.size(); ++i) off[i] = scale * beta[i];
        return off;
    }

    SymmetricTridiagonal<double> tridiagonal() const {
        return SymmetricTridiagonal<double>(std::vector<double>(size(), 0.0), off_diagonal());
    }
};

inline BandMatrix build_h_matrix(const QuantumParams& params, double lambda) {
    BandMatrix m;
    m.n = params.n();
    m.hbar = params.hbar();
    m.ell0 = ell0_of(params, lambda);
    m.mu = std::min(m.ell0, m.n);
    m.scale = std::pow(m.hbar / 2.0, 1.5);
    m.beta.resize(static_cast<std::size_t>(m.mu));
    for (std::int64_t k = 1; k <= m.mu; ++k) {
        const double a = static_cast<double>(m.ell0 + 1 - k);
        const double b = static_cast<double>(k);
        const double c = static_cast<double>(m.n - k + 1);
        m.beta[static_cast<std::size_t>(k - 1)] = std::sqrt(a * b * c);
    }
    return m;
}

struct SpectrumOptions {
    double tol = 1e-15;
    bool use_symmetry = false;
    unsigned threads = worker_count();
};

inline std::vector<double> tridiag_eigenvalues(const BandMatrix& m, double tol, bool use_symmetry = false,
                                               unsigned threads = 1) {
    TridiagonalOptions<double> opt;
    opt.tol = tol;
    opt.use_symmetry = use_symmetry;
    opt.threads = threads;
    return m.tridiagonal().eigenvalues(opt);
}

// Σ(n): spectrum of Ĥ on ker(Ĵ - Id).
inline std::vector<double> sigma_n(const QuantumParams& params, const SpectrumOptions& opt = {}) {
    return tridiag_eigenvalues(build_h_matrix(params, 1.0), opt.tol, opt.use_symmetry, opt.threads);
}

struct SpectrumColumn {
    double lambda = 0.0;
    std::int64_t ell0 = 0;
    std::vector<double> nus;  // ascending
};

struct JointSpectrum {
    std::int64_t n = 0;
    double hbar = 0.0;
    std::vector<SpectrumColumn> columns;  // ascending in λ

    std::size_t point_count() const noexcept {
        std::size_t c = 0;
        for (const auto& col : columns) c += col.nus.size();
        return c;
    }
};

// One column per Ĵ-eigenvalue in [lambda_min, lambda_max]; an empty range gives
// an empty spectrum.
inline JointSpectrum joint_spectrum(const QuantumParams& params, double lambda_min, double lambda_max,
                                    const SpectrumOptions& opt = {}) {
    if (!(lambda_min <= lambda_max)) throw std::invalid_argument("joint_spectrum: lambda_min > lambda_max");
    JointSpectrum js;
    js.n = params.n();
    js.hbar = params.hbar();
    const std::int64_t m_lo =
        std::max<std::int64_t>(0, static_cast<std::int64_t>(std::ceil(params.ell0_real(lambda_min) - 1e-9)));
    const std::int64_t m_hi = static_cast<std::int64_t>(std::floor(params.ell0_real(lambda_max) + 1e-9));
    if (m_hi < m_lo) return js;

    js.columns.resize(static_cast<std::size_t>(m_hi - m_lo + 1));
    parallel_for(
        js.columns.size(),
        [&](std::size_t i) {
            const std::int64_t m = m_lo + static_cast<std::int64_t>(i);
            auto& col = js.columns[i];
            col.lambda = params.j_eigenvalue(m);
            col.ell0 = m;
            col.nus = tridiag_eigenvalues(build_h_matrix(params, col.lambda), opt.tol, opt.use_symmetry, 1);
        },
        opt.threads);
    return js;
}

}  // namespace semitoric
