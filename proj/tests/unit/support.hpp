#pragma once

#include <cmath>
#include <random>

#include "gravphase/phase.hpp"
#include "gravphase/species.hpp"

namespace gptest {

inline double rel(double a, double b) { return gravphase::relative_deviation(a, b); }

// Cesium, kappa = 1.4748e7 rad/m, T = 0.1 s, g = 9.8 m/s^2, eta = 1.
inline gravphase::MzScenario default_scenario() {
    using namespace gravphase;
    MzScenario s;
    s.species = cesium133();
    s.env = GravityEnvironment::uniform(GravAccel(9.8));
    s.kappa = Wavenumber(1.4748e7);
    s.t = Time(0.1);
    return s;
}

inline std::mt19937_64 rng(std::uint64_t seed = 20240611) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(g);
}

} // namespace gptest
