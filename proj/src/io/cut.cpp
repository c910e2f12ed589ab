#include "allmach/io/cut.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace allmach {

std::vector<CutSample> extract_cut(const FieldSet& f, const PrimalMesh& pm, const DualMesh& dm,
                                   int axis, double c) {
    std::vector<CutSample> cut;
    for (int i = 0; i < dm.n_cells; ++i) {
        double coord = axis == 0 ? dm.node[i].x : dm.node[i].y;
        double half_h = 0.5 * std::sqrt(2.0 * dm.area[i]);  // half a local cell height
        if (std::abs(coord - c) > half_h) continue;
        CutSample s;
        s.s = axis == 0 ? dm.node[i].y : dm.node[i].x;
        s.q.rho = f.rho[i];
        s.q.vel = {f.mom_x[i] / f.rho[i], f.mom_y[i] / f.rho[i]};
        s.q.p = f.cell_pressure(dm.cell_edge[i], pm, dm);
        cut.push_back(s);
    }
    if (cut.empty()) throw SolverError("cut line intersects no cells");
    std::sort(cut.begin(), cut.end(), [](const CutSample& a, const CutSample& b) {
        return a.s < b.s;
    });
    return cut;
}

void write_cut_csv(const std::vector<CutSample>& cut, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw SolverError("cannot write " + path);
    out << "s,rho,u,v,p\n";
    char buf[160];
    for (const auto& s : cut) {
        std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g,%.12g\n", s.s, s.q.rho, s.q.vel.x,
                      s.q.vel.y, s.q.p);
        out << buf;
    }
}

} // namespace allmach
