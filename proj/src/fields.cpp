#include "allmach/fields.hpp"

namespace allmach {

void FieldSet::update_temperature(const PrimalMesh& primal, const DualMesh& dual,
                                  const FluidParams& par) {
    const double R = par.R();
    for (int c = 0; c < dual.n_cells; ++c)
        theta[c] = cell_pressure(dual.cell_edge[c], primal, dual) / (rho[c] * R);
}

FieldSet init_fields(const PrimalMesh& primal, const DualMesh& dual, const FluidParams& par,
                     const std::function<Primitive(Vec2)>& ic) {
    FieldSet f;
    f.resize(dual.n_cells, dual.n_dofs);
    for (int c = 0; c < dual.n_cells; ++c)
        f.set_cell(c, prim_to_cons(ic(dual.node[c]), par));
    for (int v = 0; v < primal.n_vertices(); ++v)
        f.P[dual.vertex_dof[v]] = ic(primal.vertices[v]).p;
    f.update_temperature(primal, dual, par);
    return f;
}

} // namespace allmach
