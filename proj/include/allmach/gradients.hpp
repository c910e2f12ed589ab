#pragma once

#include <vector>

#include "allmach/dual_mesh.hpp"

namespace allmach {

// Per-triangle constant gradients of the linear interpolant through the three
// edge-midpoint (dual cell) values: the Crouzeix-Raviart gradient. Exact for
// globally linear fields.
using GradientField = std::vector<Vec2>;

// Overrides replace the edge-midpoint value on selected (boundary) edges, so
// prescribed wall data enters the reconstruction.
struct DofOverride {
    std::vector<char> active;   // per primal edge
    std::vector<double> value;

    void resize(int n_edges) {
        active.assign(n_edges, 0);
        value.assign(n_edges, 0.0);
    }
    bool empty() const { return active.empty(); }
    void set(int e, double v) {
        active[e] = 1;
        value[e] = v;
    }
};

GradientField galerkin_gradients(const std::vector<double>& cell_values,
                                 const PrimalMesh& primal, const DualMesh& dual,
                                 const DofOverride* override_dofs = nullptr);

// In-place variant used by the transport kernel to avoid reallocation.
void galerkin_gradients(const std::vector<double>& cell_values, const PrimalMesh& primal,
                        const DualMesh& dual, const DofOverride* override_dofs,
                        GradientField& out);

// Gradient of the P1 vertex pressure field on one triangle.
Vec2 p1_gradient(const std::vector<double>& dof_values, const PrimalMesh& primal,
                 const DualMesh& dual, int t);

} // namespace allmach
