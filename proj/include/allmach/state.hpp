#pragma once

#include <stdexcept>
#include <string>

#include "allmach/vec2.hpp"

namespace allmach {

// Error raised when the solver encounters invalid thermodynamic states or
// a linear solve fails. Carries enough context to locate the failure.
class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
    SolverError(const std::string& what, int cell, double time)
        : std::runtime_error(what + " (cell " + std::to_string(cell) +
                             ", t=" + std::to_string(time) + ")"),
          cell_index(cell), sim_time(time) {}

    int cell_index = -1;
    double sim_time = -1.0;
};

struct FluidParams {
    double gamma = 1.4;   // ratio of specific heats
    double c_v = 2.5;     // heat capacity at constant volume
    double mu = 0.0;      // dynamic viscosity
    double lambda = 0.0;  // thermal conductivity
    Vec2 gravity{0.0, 0.0};

    double c_p() const { return gamma * c_v; }
    double R() const { return c_p() - c_v; }

    void validate() const {
        if (!(gamma > 1.0)) throw SolverError("FluidParams: gamma must exceed 1");
        if (!(c_v > 0.0)) throw SolverError("FluidParams: c_v must be positive");
        if (mu < 0.0 || lambda < 0.0)
            throw SolverError("FluidParams: transport coefficients must be nonnegative");
    }
};

struct Primitive {
    double rho = 1.0;
    Vec2 vel{0.0, 0.0};
    double p = 1.0;
};

// Conserved state (rho, rho*u, rho*E)
struct Conserved {
    double rho = 1.0;
    Vec2 mom{0.0, 0.0};
    double E = 1.0;  // total energy density
};

inline Conserved prim_to_cons(const Primitive& q, const FluidParams& par) {
    Conserved w;
    w.rho = q.rho;
    w.mom = q.rho * q.vel;
    w.E = q.p / (par.gamma - 1.0) + 0.5 * q.rho * q.vel.norm2();
    return w;
}

inline Primitive cons_to_prim(const Conserved& w, const FluidParams& par,
                              int cell = -1, double time = -1.0) {
    if (!(w.rho > 0.0))
        throw SolverError("non-positive density " + std::to_string(w.rho), cell, time);
    Primitive q;
    q.rho = w.rho;
    q.vel = w.mom / w.rho;
    q.p = (par.gamma - 1.0) * (w.E - 0.5 * w.mom.norm2() / w.rho);
    if (!(q.p > 0.0))
        throw SolverError("non-positive pressure " + std::to_string(q.p), cell, time);
    return q;
}

// Pressure without the positivity guard, for diagnostics and face recovery.
inline double pressure_of(const Conserved& w, const FluidParams& par) {
    return (par.gamma - 1.0) * (w.E - 0.5 * w.mom.norm2() / w.rho);
}

inline double sound_speed(const Primitive& q, const FluidParams& par) {
    return std::sqrt(par.gamma * q.p / q.rho);
}

inline double enthalpy(const Primitive& q, const FluidParams& par) {
    return par.gamma / (par.gamma - 1.0) * q.p / q.rho;
}

inline double temperature(const Primitive& q, const FluidParams& par) {
    return q.p / (q.rho * par.R());
}

// Kinetic energy density rho*K = |rho u|^2 / (2 rho)
inline double kinetic_energy_density(const Conserved& w) {
    return 0.5 * w.mom.norm2() / w.rho;
}

} // namespace allmach
