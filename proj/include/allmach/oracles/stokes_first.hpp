#pragma once

#include <cmath>

#include "allmach/state.hpp"

namespace allmach {

// Impulsively sheared layer: vertical velocity of the first Stokes problem in
// the incompressible limit, u2(x, t) = (1/10) erf(x / (2 sqrt(mu t))).
inline double stokes_first_exact(double x, double t, double mu) {
    if (!(t > 0.0) || !(mu > 0.0))
        throw SolverError("stokes_first_exact requires t > 0 and mu > 0");
    return 0.1 * std::erf(x / (2.0 * std::sqrt(mu * t)));
}

} // namespace allmach
