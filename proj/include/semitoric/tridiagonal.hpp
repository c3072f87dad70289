#pragma once

// Eigenvalues of real symmetric tridiagonal matrices by Sturm-sequence
// bisection. Each eigenvalue is located independently by index, so results are
// ordered, deterministic and can be computed in parallel.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "semitoric/parallel.hpp"

namespace semitoric {

template <std::floating_point Real>
struct TridiagonalOptions {
    Real tol = Real(1e-15);    // absolute accuracy target relative to the matrix norm
    bool newton = true;        // Newton refinement once an eigenvalue is isolated
    bool use_symmetry = false; // zero-diagonal only: compute the upper half and mirror
    unsigned threads = 1;
};

// Matrix with diagonal `diag` (size N) and off-diagonal `off` (size N-1).
template <std::floating_point Real>
class SymmetricTridiagonal {
public:
    SymmetricTridiagonal(std::vector<Real> diag, std::vector<Real> off) : diag_(std::move(diag)), off_(std::move(off)) {
        if (diag_.empty()) throw std::invalid_argument("SymmetricTridiagonal: empty matrix");
        if (off_.size() + 1 != diag_.size())
            throw std::invalid_argument("SymmetricTridiagonal: off-diagonal must have N-1 entries");
        off2_.resize(off_.size());
        for (std::size_t i = 0; i < off_.size(); ++i) off2_[i] = off_[i] * off_[i];
        Real max_off2 = 0;
        for (Real e2 : off2_) max_off2 = std::max(max_off2, e2);
        pivmin_ = std::numeric_limits<Real>::min() * std::max<Real>(Real(1), max_off2);
    }

    std::size_t size() const noexcept { return diag_.size(); }
    std::span<const Real> diag() const noexcept { return diag_; }
    std::span<const Real> off() const noexcept { return off_; }

    bool zero_diagonal() const noexcept {
        return std::all_of(diag_.begin(), diag_.end(), [](Real d) { return d == Real(0); });
    }

    // Infinity norm (max absolute row sum).
    Real norm() const noexcept {
        Real best = 0;
        for (std::size_t i = 0; i < size(); ++i) {
            Real s = std::abs(diag_[i]);
            if (i > 0) s += std::abs(off_[i - 1]);
            if (i + 1 < size()) s += std::abs(off_[i]);
            best = std::max(best, s);
        }
        return best;
    }

    // Gershgorin enclosure of the spectrum.
    std::pair<Real, Real> gershgorin() const noexcept {
        Real lo = std::numeric_limits<Real>::max(), hi = std::numeric_limits<Real>::lowest();
        for (std::size_t i = 0; i < size(); ++i) {
            Real radius = 0;
            if (i > 0) radius += std::abs(off_[i - 1]);
            if (i + 1 < size()) radius += std::abs(off_[i]);
            lo = std::min(lo, diag_[i] - radius);
            hi = std::max(hi, diag_[i] + radius);
        }
        return {lo, hi};
    }

    // Number of eigenvalues strictly less than x (negative pivots of the LDL^T
    // factorization of T - xI).
    std::size_t sturm_count(Real x) const noexcept {
        std::size_t count = 0;
        Real q = diag_[0] - x;
        if (std::abs(q) < pivmin_) q = -pivmin_;
        if (q < 0) ++count;
        for (std::size_t i = 1; i < size(); ++i) {
            q = diag_[i] - x - off2_[i - 1] / q;
            if (std::abs(q) < pivmin_) q = -pivmin_;
            if (q < 0) ++count;
        }
        return count;
    }

    struct Probe {
        std::size_t count;
        Real newton_step;  // f/f' for f = det(T - xI)
    };

    // Sturm count together with the Newton correction from the same recursion:
    // q_i = d_i - x - e_i^2/q_{i-1}, f'/f = Σ q_i'/q_i.
    Probe probe(Real x) const noexcept {
        std::size_t count = 0;
        Real q = diag_[0] - x;
        if (std::abs(q) < pivmin_) q = -pivmin_;
        Real dq = -1;
        Real logderiv = dq / q;
        if (q < 0) ++count;
        for (std::size_t i = 1; i < size(); ++i) {
            const Real q_prev = q;
            q = diag_[i] - x - off2_[i - 1] / q_prev;
            dq = Real(-1) + off2_[i - 1] * dq / (q_prev * q_prev);
            if (std::abs(q) < pivmin_) q = -pivmin_;
            logderiv += dq / q;
            if (q < 0) ++count;
        }
        const Real step = (logderiv != 0 && std::isfinite(logderiv)) ? Real(1) / logderiv
                                                                      : std::numeric_limits<Real>::quiet_NaN();
        return {count, step};
    }

    // The k-th smallest eigenvalue (0-based).
    Real eigenvalue(std::size_t k, const TridiagonalOptions<Real>& opt = {}) const {
        if (k >= size()) throw std::out_of_range("SymmetricTridiagonal::eigenvalue: index out of range");
        if (size() == 1) return diag_[0];
        auto [lo, hi] = gershgorin();
        const Real scale = std::max({std::abs(lo), std::abs(hi), std::numeric_limits<Real>::min()});
        lo -= scale * Real(2) * std::numeric_limits<Real>::epsilon() + pivmin_;
        hi += scale * Real(2) * std::numeric_limits<Real>::epsilon() + pivmin_;
        const Real abs_tol = std::max(opt.tol * norm(), pivmin_);
        std::size_t count_lo = 0, count_hi = size();
        const auto converged = [&](Real a, Real b) {
            const Real mag = std::max(std::abs(a), std::abs(b));
            return b - a <= std::max(abs_tol, Real(4) * std::numeric_limits<Real>::epsilon() * mag);
        };

        Real x = (lo + hi) / 2;
        for (int iter = 0; iter < 400; ++iter) {
            if (converged(lo, hi)) break;
            const Probe p = probe(x);
            if (p.count <= k) {
                lo = x;
                count_lo = p.count;
            } else {
                hi = x;
                count_hi = p.count;
            }
            const bool isolated = count_hi - count_lo == 1;
            if (opt.newton && isolated && std::isfinite(p.newton_step)) {
                const Real candidate = x - p.newton_step;
                if (candidate > lo && candidate < hi) {
                    const Real mag = std::max(std::abs(candidate), scale * std::numeric_limits<Real>::epsilon());
                    if (std::abs(p.newton_step) <= std::max(abs_tol, Real(2) * std::numeric_limits<Real>::epsilon() * mag))
                        return candidate;
                    x = candidate;
                    continue;
                }
            }
            const Real mid = (lo + hi) / 2;
            if (mid <= lo || mid >= hi) break;
            x = mid;
        }
        return (lo + hi) / 2;
    }

    // All eigenvalues, ascending.
    std::vector<Real> eigenvalues(const TridiagonalOptions<Real>& opt = {}) const {
        if (!(opt.tol > 0)) throw std::invalid_argument("SymmetricTridiagonal::eigenvalues: tol must be positive");
        const std::size_t n = size();
        std::vector<Real> out(n);
        if (opt.use_symmetry) {
            if (!zero_diagonal())
                throw std::invalid_argument("SymmetricTridiagonal: symmetric path requires a zero diagonal");
            const std::size_t first = n / 2;
            parallel_for(n - first, [&](std::size_t i) { out[first + i] = eigenvalue(first + i, opt); }, opt.threads);
            for (std::size_t k = 0; k < first; ++k) out[k] = -out[n - 1 - k];
            if (n % 2 == 1) out[n / 2] = Real(0);
        } else {
            parallel_for(n, [&](std::size_t k) { out[k] = eigenvalue(k, opt); }, opt.threads);
        }
        // Independent brackets can disagree by an ulp on clusters.
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    std::vector<Real> diag_;
    std::vector<Real> off_;
    std::vector<Real> off2_;
    Real pivmin_ = 0;
};

}  // namespace semitoric
