#include "allmach/gradients.hpp"

namespace allmach {

void galerkin_gradients(const std::vector<double>& cell_values, const PrimalMesh& primal,
                        const DualMesh& dual, const DofOverride* ov, GradientField& out) {
    const int nt = primal.n_tris();
    out.resize(nt);
#pragma omp parallel for schedule(static)
    for (int t = 0; t < nt; ++t) {
        const auto& tri = primal.tris[t];
        const double inv2A = 1.0 / (2.0 * primal.area[t]);
        Vec2 g{0.0, 0.0};
        for (int k = 0; k < 3; ++k) {
            int e = primal.tri_edges[t][k];  // edge opposite vertex k
            double w = (ov && !ov->empty() && ov->active[e]) ? ov->value[e]
                                                             : cell_values[dual.edge_cell[e]];
            // CR basis for edge k is 1 - 2*lambda_k
            Vec2 grad_lambda =
                Vec2{primal.vertices[tri[(k + 1) % 3]].y - primal.vertices[tri[(k + 2) % 3]].y,
                     primal.vertices[tri[(k + 2) % 3]].x - primal.vertices[tri[(k + 1) % 3]].x} *
                inv2A;
            g += grad_lambda * (-2.0 * w);
        }
        out[t] = g;
    }
}

GradientField galerkin_gradients(const std::vector<double>& cell_values,
                                 const PrimalMesh& primal, const DualMesh& dual,
                                 const DofOverride* ov) {
    GradientField out;
    galerkin_gradients(cell_values, primal, dual, ov, out);
    return out;
}

Vec2 p1_gradient(const std::vector<double>& dof_values, const PrimalMesh& primal,
                 const DualMesh& dual, int t) {
    const auto& tri = primal.tris[t];
    const double inv2A = 1.0 / (2.0 * primal.area[t]);
    Vec2 g{0.0, 0.0};
    for (int k = 0; k < 3; ++k) {
        Vec2 grad_lambda =
            Vec2{primal.vertices[tri[(k + 1) % 3]].y - primal.vertices[tri[(k + 2) % 3]].y,
                 primal.vertices[tri[(k + 2) % 3]].x - primal.vertices[tri[(k + 1) % 3]].x} *
            inv2A;
        g += grad_lambda * dof_values[dual.vertex_dof[tri[k]]];
    }
    return g;
}

} // namespace allmach
