#include "allmach/io/vtk_writer.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <vector>

namespace allmach {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

} // namespace

void write_vtk(const FieldSet& f, const PrimalMesh& pm, const DualMesh& dm,
               const FluidParams& par, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw SolverError("cannot write " + path);

    // points: primal vertices followed by barycenters
    const int nv = pm.n_vertices();
    out << "# vtk DataFile Version 3.0\nstaggered dual-cell fields\nASCII\n"
        << "DATASET UNSTRUCTURED_GRID\nPOINTS " << nv + pm.n_tris() << " double\n";
    for (const auto& v : pm.vertices) out << fmt(v.x) << ' ' << fmt(v.y) << " 0\n";
    for (const auto& b : pm.barycenter) out << fmt(b.x) << ' ' << fmt(b.y) << " 0\n";

    // one sub-triangle per (edge, owner): (v0, v1, barycenter)
    std::vector<std::array<int, 4>> cells;  // v0 v1 bary cell_id
    for (int e = 0; e < pm.n_edges(); ++e)
        for (int s = 0; s < 2; ++s) {
            int t = pm.edge_tris[e][s];
            if (t < 0) continue;
            cells.push_back({pm.edges[e][0], pm.edges[e][1], nv + t, dm.edge_cell[e]});
        }

    out << "CELLS " << cells.size() << ' ' << 4 * cells.size() << '\n';
    for (const auto& c : cells) out << "3 " << c[0] << ' ' << c[1] << ' ' << c[2] << '\n';
    out << "CELL_TYPES " << cells.size() << '\n';
    for (size_t i = 0; i < cells.size(); ++i) out << "5\n";

    out << "CELL_DATA " << cells.size() << '\n';
    out << "SCALARS rho double 1\nLOOKUP_TABLE default\n";
    for (const auto& c : cells) out << fmt(f.rho[c[3]]) << '\n';
    out << "SCALARS p double 1\nLOOKUP_TABLE default\n";
    std::vector<double> p_cell(dm.n_cells), mach(dm.n_cells);
    for (int i = 0; i < dm.n_cells; ++i) {
        p_cell[i] = f.cell_pressure(dm.cell_edge[i], pm, dm);
        double u = std::sqrt(f.mom_x[i] * f.mom_x[i] + f.mom_y[i] * f.mom_y[i]) / f.rho[i];
        double c = std::sqrt(std::max(0.0, par.gamma * p_cell[i] / f.rho[i]));
        mach[i] = c > 0.0 ? u / c : 0.0;
    }
    for (const auto& c : cells) out << fmt(p_cell[c[3]]) << '\n';
    out << "SCALARS mach double 1\nLOOKUP_TABLE default\n";
    for (const auto& c : cells) out << fmt(mach[c[3]]) << '\n';
    out << "VECTORS velocity double\n";
    for (const auto& c : cells)
        out << fmt(f.mom_x[c[3]] / f.rho[c[3]]) << ' ' << fmt(f.mom_y[c[3]] / f.rho[c[3]])
            << " 0\n";
}

void write_csv(const FieldSet& f, const PrimalMesh& pm, const DualMesh& dm,
               const std::string& path) {
    std::ofstream out(path);
    if (!out) throw SolverError("cannot write " + path);
    out << "x,y,rho,u,v,p\n";
    for (int c = 0; c < dm.n_cells; ++c) {
        out << fmt(dm.node[c].x) << ',' << fmt(dm.node[c].y) << ',' << fmt(f.rho[c]) << ','
            << fmt(f.mom_x[c] / f.rho[c]) << ',' << fmt(f.mom_y[c] / f.rho[c]) << ','
            << fmt(f.cell_pressure(dm.cell_edge[c], pm, dm)) << '\n';
    }
}

} // namespace allmach
