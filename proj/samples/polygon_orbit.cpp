// Moves the eps = -1 polygon to the eps = +1 representative and develops the
// joint spectrum at n = 55.

#include <boost/rational.hpp>
#include <cstdint>
#include <cstdio>

#include "semitoric/polygon_invariant.hpp"

int main() {
    using namespace semitoric;
    using Q = boost::rational<std::int64_t>;

    const auto minus = reference_polygon<Q>(-1);
    const auto plus = group_action(minus, +1, 0);
    std::printf("flipped to eps = %+d, matches reference: %s\n", plus.epsilon(),
                plus == reference_polygon<Q>(1) ? "yes" : "no");
    for (const auto& v : plus.vertices())
        std::printf("  vertex (%g, %g)\n", to_double(v.j), to_double(v.h));

    const QuantumParams params(55);
    const auto js = joint_spectrum(params, -1.0, 3.0);
    for (int eps : {-1, 1}) {
        const auto dev = develop_spectrum(js, 1.0, eps);
        std::printf("eps = %+d: shear %lld | %lld, hull distance %.4f\n", eps,
                    static_cast<long long>(dev.shear_left), static_cast<long long>(dev.shear_right),
                    developed_hull_distance(dev));
    }
    const auto h = height_estimate(js, params);
    std::printf("height %.6f (plateau at lambda = %g)\n", h.height, h.plateau_lambda);
}
