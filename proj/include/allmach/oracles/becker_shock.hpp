#pragma once

#include "allmach/state.hpp"

namespace allmach {

// Steady viscous shock profile of the compressible Navier-Stokes equations at
// Prandtl number 3/4, where the total enthalpy is uniform and the velocity
// satisfies a separable first-order ODE with a closed-form implicit solution.
// The shock is stationary in this frame; the upstream state sits at x -> +inf
// when the mass flux is negative. x = 0 is centered on the mean velocity.
struct BeckerShock {
    FluidParams fluid;    // requires mu c_p / lambda = 3/4
    double rho0 = 1.0;    // upstream state
    double u0 = -2.0;
    double p0 = 1.0 / 1.4;

    // derived
    double u1 = 0.0;      // downstream velocity from the jump conditions
    double H0 = 0.0;      // uniform total enthalpy
    double mass_flux = 0.0;

    BeckerShock(const FluidParams& par, double rho0_, double u0_, double p0_);

    Primitive operator()(double x) const;
    double mach() const;
};

} // namespace allmach
