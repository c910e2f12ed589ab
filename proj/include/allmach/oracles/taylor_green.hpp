#pragma once

#include <cmath>

#include "allmach/state.hpp"

namespace allmach {

// Stationary Taylor-Green vortex on [0, 2pi]^2: incompressible Euler solution
// used as a low Mach number reference; p0 sets the background pressure level.
inline Primitive taylor_green_exact(Vec2 x, double p0, double gamma) {
    Primitive q;
    q.rho = 1.0;
    q.vel = {std::sin(x.x) * std::cos(x.y), -std::cos(x.x) * std::sin(x.y)};
    q.p = p0 / (gamma - 1.0) + 0.25 * (std::cos(2.0 * x.x) + std::cos(2.0 * x.y));
    return q;
}

} // namespace allmach
