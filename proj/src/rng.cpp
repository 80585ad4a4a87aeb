#include "physarum/rng.hpp"

#include <cmath>

#include "physarum/geometry.hpp"

namespace physarum {

std::pair<double, double> Rng::gaussian_pair() {
    double u1 = next_double();
    while (u1 == 0.0) u1 = next_double();
    const double u2 = next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return {r * std::cos(2.0 * kPi * u2), r * std::sin(2.0 * kPi * u2)};
}

}  // namespace physarum
