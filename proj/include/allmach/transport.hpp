#pragma once

#include <utility>
#include <vector>

#include "allmach/bc.hpp"
#include "allmach/fields.hpp"
#include "allmach/flux.hpp"
#include "allmach/gradients.hpp"
#include "allmach/limiter.hpp"

namespace allmach {

struct TransportOptions {
    bool lader = false;               // half-time reconstruction/evolution (second order)
    LimiterChoice limiter = LimiterChoice::ENO;
    bool primitive_recon = false;     // reconstruct (rho, u, p) instead of conserved vars
    double c_alpha = 0.0;             // artificial viscosity in the signal speed
    bool serial = false;              // reference path: per-cell recomputation, no face arrays
    bool monitor_reconstruction = false;
};

// Output of the explicit stage: the new density and the intermediate momentum
// and total energy density, per dual cell.
struct TransportResult {
    std::vector<double> rho;
    std::vector<double> mom_x, mom_y;
    std::vector<double> E;
    // largest excursion of reconstructed face densities beyond the adjacent
    // cell values (only filled when monitor_reconstruction is set)
    double recon_overshoot = 0.0;
};

void transport_stage(const FieldSet& f, const PrimalMesh& primal, const DualMesh& dual,
                     const FluidParams& par, const BoundaryTable& bcs, double dt, double time,
                     const TransportOptions& opt, TransportResult& out);

// Volume-integrated pressure gradient over one dual cell: sum of face-averaged
// vertex pressures times the scaled outward normals. Exact for P1 fields.
Vec2 pressure_gradient_term(int cell, const std::vector<double>& p_dof, const PrimalMesh& primal,
                            const DualMesh& dual);

// Discrete divergence of the heat flux -lambda grad(theta) over one dual cell.
double heat_flux_term(int cell, const GradientField& grad_theta, double lambda,
                      const DualMesh& dual);

// Half-time evolved face states of one interior face (testing hook).
std::pair<Conserved, Conserved> lader_face_states(int fid, const FieldSet& f,
                                                  const PrimalMesh& primal, const DualMesh& dual,
                                                  const FluidParams& par, const BoundaryTable& bcs,
                                                  double dt, double time,
                                                  const TransportOptions& opt);

} // namespace allmach
