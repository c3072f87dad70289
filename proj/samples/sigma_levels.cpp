// Prints the minimal normalized spacing of Sigma(n) and the two B22 estimates
// for n = 2^k + 1.

#include <cstdio>

#include "semitoric/inverse_spectral.hpp"

int main() {
    using namespace semitoric;
    const auto series = convergence_study(1, 8, true);
    std::printf("%3s %6s %12s %12s %12s %12s\n", "k", "n", "t_min", "B22 simple", "B22 accel", "a2/ln2");
    for (const auto& r : series.rows)
        std::printf("%3d %6lld %12.6f %12.6f %12.6f %12.6f\n", r.k, static_cast<long long>(r.n), r.t_min,
                    r.b22_simple, r.b22_accel, r.a2_over_ln2);
}
