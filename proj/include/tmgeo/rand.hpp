#pragma once

#include <random>

namespace tmgeo {

// Draws reproducible across platforms: raw engine words only, no library
// distributions.
inline double uniform01(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

inline double normal_sample(std::mt19937_64& rng) {
    double u1 = uniform01(rng);
    while (u1 <= 1e-300) u1 = uniform01(rng);
    double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
}

} // namespace tmgeo
