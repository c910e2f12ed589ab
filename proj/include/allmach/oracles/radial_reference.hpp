#pragma once

#include <vector>

#include "allmach/state.hpp"

namespace allmach {

// Radially symmetric reference solution of the 2D Euler equations: the 1D
// system in r with geometric source terms, solved by a second-order TVD
// scheme (minmod slopes, HLLC flux) on a fine grid.
struct RadialSolution {
    std::vector<double> r;  // cell centers
    std::vector<double> rho, u, p;

    double interp(const std::vector<double>& f, double rq) const;
    double rho_at(double rq) const { return interp(rho, rq); }
    double u_at(double rq) const { return interp(u, rq); }
    double p_at(double rq) const { return interp(p, rq); }
};

RadialSolution radial_explosion_reference(const Primitive& inner, const Primitive& outer,
                                          double r_jump, double gamma, int n_cells, double r_max,
                                          double t_end);

// Same TVD solver with an arbitrary radial initial condition (self-convergence
// studies).
RadialSolution radial_reference_custom(const std::vector<Primitive>& init, double gamma,
                                       double r_max, double t_end);

} // namespace allmach
