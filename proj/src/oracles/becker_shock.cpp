#include "allmach/oracles/becker_shock.hpp"

#include <cmath>
#include <string>

namespace allmach {

BeckerShock::BeckerShock(const FluidParams& par, double rho0_, double u0_, double p0_)
    : fluid(par), rho0(rho0_), u0(u0_), p0(p0_) {
    double Pr = par.mu * par.c_p() / par.lambda;
    if (std::abs(Pr - 0.75) > 1e-12)
        throw SolverError("closed-form viscous shock requires Pr = 3/4, got " +
                          std::to_string(Pr));
    const double g = par.gamma;
    const double c0 = std::sqrt(g * p0 / rho0);
    const double M2 = (u0 / c0) * (u0 / c0);
    u1 = u0 * ((g - 1.0) * M2 + 2.0) / ((g + 1.0) * M2);
    H0 = g / (g - 1.0) * p0 / rho0 + 0.5 * u0 * u0;
    mass_flux = rho0 * u0;
}

double BeckerShock::mach() const {
    return std::abs(u0) / std::sqrt(fluid.gamma * p0 / rho0);
}

Primitive BeckerShock::operator()(double x) const {
    const double g = fluid.gamma;
    const double C = 8.0 * g * fluid.mu / (3.0 * mass_flux * (g + 1.0));

    auto xi = [&](double u) {
        return C / (u0 - u1) * (u0 * std::log(std::abs(u - u0)) - u1 * std::log(std::abs(u - u1)));
    };
    const double um = 0.5 * (u0 + u1);
    const double x0 = xi(um);

    // x(u) is monotone; bracket between the asymptotic states
    double lo = std::min(u0, u1), hi = std::max(u0, u1);
    const double span = hi - lo;
    lo += 1e-15 * span;
    hi -= 1e-15 * span;
    bool increasing = (xi(hi) - x0) > (xi(lo) - x0);
    double a = lo, b = hi;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (a + b);
        double xv = xi(mid) - x0;
        if ((xv < x) == increasing) a = mid;
        else b = mid;
        if (b - a < 1e-15 * span) break;
    }
    double u = 0.5 * (a + b);

    Primitive q;
    q.rho = mass_flux / u;
    q.vel = {u, 0.0};
    double h = H0 - 0.5 * u * u;  // static enthalpy
    q.p = q.rho * h * (g - 1.0) / g;
    return q;
}

} // namespace allmach
