#pragma once

#include "allmach/state.hpp"

namespace allmach {

// Convective flux of the transport subsystem. The energy component carries
// only the kinetic energy density (K = |u|^2 / 2 per unit mass); pressure and
// enthalpy are handled by the implicit projection.
struct FluxTensor {
    Vec2 mass;    // rho u
    Mat2 mom;     // (1/rho) (rho u) x (rho u)
    Vec2 energy;  // K rho u
};

inline FluxTensor physical_flux(const Conserved& w) {
    FluxTensor f;
    f.mass = w.mom;
    f.mom = Mat2::outer(w.mom, w.mom) * (1.0 / w.rho);
    double K = 0.5 * w.mom.norm2() / (w.rho * w.rho);
    f.energy = w.mom * K;
    return f;
}

// Normal flux F(w) . eta for a scaled normal.
struct NormalFlux {
    double mass = 0.0;
    Vec2 mom{0.0, 0.0};
    double energy = 0.0;

    NormalFlux operator+(const NormalFlux& o) const {
        return {mass + o.mass, mom + o.mom, energy + o.energy};
    }
    NormalFlux operator-(const NormalFlux& o) const {
        return {mass - o.mass, mom - o.mom, energy - o.energy};
    }
    NormalFlux operator*(double s) const { return {mass * s, mom * s, energy * s}; }
    NormalFlux operator-() const { return {-mass, -mom, -energy}; }
};

inline NormalFlux normal_flux(const Conserved& w, const Vec2& eta) {
    double un = w.mom.dot(eta) / w.rho;  // u . eta
    NormalFlux z;
    z.mass = w.mom.dot(eta);
    z.mom = w.mom * un;
    z.energy = 0.5 * (w.mom.norm2() / (w.rho * w.rho)) * w.mom.dot(eta);
    return z;
}

// Rusanov flux of the pressureless transport system. The dissipation acts on
// (rho, rho u, rho K) and the signal speed carries no sound speed; c_alpha adds
// artificial viscosity for strong density/energy variations at low velocity.
inline NormalFlux rusanov_face_flux(const Conserved& wi, const Conserved& wj, const Vec2& eta,
                                    double c_alpha) {
    NormalFlux z = (normal_flux(wi, eta) + normal_flux(wj, eta)) * 0.5;
    double alpha = std::max(std::abs(wi.mom.dot(eta) / wi.rho), std::abs(wj.mom.dot(eta) / wj.rho)) +
                   c_alpha * eta.norm();
    z.mass -= 0.5 * alpha * (wj.rho - wi.rho);
    z.mom -= (wj.mom - wi.mom) * (0.5 * alpha);
    z.energy -= 0.5 * alpha * (kinetic_energy_density(wj) - kinetic_energy_density(wi));
    return z;
}

// Deviatoric stress tensor from a velocity gradient.
inline Mat2 stress_tensor(const Mat2& grad_u, double mu) {
    Mat2 s = grad_u + grad_u.transpose();
    double d = (2.0 / 3.0) * grad_u.trace();
    s.a11 -= d;
    s.a22 -= d;
    return s * mu;
}

// Viscous face fluxes: momentum diffusion tau . eta and the work term
// (tau u_face) . eta, both with the scaled normal.
struct ViscousFlux {
    Vec2 mom{0.0, 0.0};
    double energy = 0.0;
};

inline ViscousFlux viscous_face_flux(const Mat2& grad_u, const Vec2& u_face, const Vec2& eta,
                                     double mu) {
    Mat2 tau = stress_tensor(grad_u, mu);
    return {tau * eta, (tau * u_face).dot(eta)};
}

} // namespace allmach
