#pragma once

#include <functional>
#include <vector>

#include "allmach/dual_mesh.hpp"
#include "allmach/state.hpp"

namespace allmach {

// Complete time-level state: conserved variables on dual cells, pressure on
// the primal-vertex unknowns, and the cached cell temperature.
struct FieldSet {
    std::vector<double> rho, mom_x, mom_y, E;  // per dual cell
    std::vector<double> P;                     // per pressure dof
    std::vector<double> theta;                 // per dual cell, cached

    void resize(int n_cells, int n_dofs) {
        rho.assign(n_cells, 0.0);
        mom_x.assign(n_cells, 0.0);
        mom_y.assign(n_cells, 0.0);
        E.assign(n_cells, 0.0);
        P.assign(n_dofs, 0.0);
        theta.assign(n_cells, 0.0);
    }

    Conserved cell(int i) const { return {rho[i], {mom_x[i], mom_y[i]}, E[i]}; }
    void set_cell(int i, const Conserved& w) {
        rho[i] = w.rho;
        mom_x[i] = w.mom.x;
        mom_y[i] = w.mom.y;
        E[i] = w.E;
    }

    // pressure at a dual node = linear interpolant at the edge midpoint
    double cell_pressure(int e, const PrimalMesh& primal, const DualMesh& dual) const {
        return 0.5 * (P[dual.vertex_dof[primal.edges[e][0]]] +
                      P[dual.vertex_dof[primal.edges[e][1]]]);
    }

    void update_temperature(const PrimalMesh& primal, const DualMesh& dual,
                            const FluidParams& par);
};

// Samples an initial condition onto the mesh: conserved cells at the dual
// nodes, pressure at the vertices.
FieldSet init_fields(const PrimalMesh& primal, const DualMesh& dual, const FluidParams& par,
                     const std::function<Primitive(Vec2)>& ic);

} // namespace allmach
