#include "allmach/mesh.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "allmach/state.hpp"

namespace allmach {

void PrimalMesh::finalize(const std::vector<std::array<int, 3>>& tagged_boundary) {
    const int nt = n_tris();
    const int nv = n_vertices();

    barycenter.resize(nt);
    area.resize(nt);
    domain_area = 0.0;
    for (int t = 0; t < nt; ++t) {
        auto& tri = tris[t];
        for (int k = 0; k < 3; ++k)
            if (tri[k] < 0 || tri[k] >= nv)
                throw SolverError("triangle " + std::to_string(t) + " references invalid vertex");
        double a = triangle_area(vertices[tri[0]], vertices[tri[1]], vertices[tri[2]]);
        if (a < 0.0) {  // normalize orientation
            std::swap(tri[1], tri[2]);
            a = -a;
        }
        if (!(a > 1e-14 * (1.0 + domain_area)))
            throw SolverError("degenerate triangle " + std::to_string(t) + " (area " +
                              std::to_string(a) + ")");
        area[t] = a;
        domain_area += a;
        barycenter[t] = (vertices[tri[0]] + vertices[tri[1]] + vertices[tri[2]]) / 3.0;
    }

    // unique edge extraction
    edges.clear();
    edge_tris.clear();
    tri_edges.assign(nt, {-1, -1, -1});
    std::map<std::pair<int, int>, int> edge_of;
    for (int t = 0; t < nt; ++t) {
        for (int k = 0; k < 3; ++k) {
            int a = tris[t][(k + 1) % 3];
            int b = tris[t][(k + 2) % 3];
            auto key = std::minmax(a, b);
            auto it = edge_of.find(key);
            int e;
            if (it == edge_of.end()) {
                e = static_cast<int>(edges.size());
                edge_of.emplace(key, e);
                edges.push_back({key.first, key.second});
                edge_tris.push_back({t, -1});
            } else {
                e = it->second;
                if (edge_tris[e][1] != -1)
                    throw SolverError("non-manifold edge (" + std::to_string(key.first) + "," +
                                      std::to_string(key.second) + ") shared by more than 2 triangles");
                edge_tris[e][1] = t;
            }
            tri_edges[t][k] = e;
        }
    }

    edge_mid.resize(edges.size());
    edge_tag.assign(edges.size(), -1);
    for (size_t e = 0; e < edges.size(); ++e) {
        edge_mid[e] = (vertices[edges[e][0]] + vertices[edges[e][1]]) * 0.5;
        if (edge_tris[e][1] == -1) edge_tag[e] = 0;
    }
    for (const auto& be : tagged_boundary) {
        auto key = std::minmax(be[0], be[1]);
        auto it = edge_of.find({key.first, key.second});
        if (it == edge_of.end())
            throw SolverError("tagged boundary edge (" + std::to_string(be[0]) + "," +
                              std::to_string(be[1]) + ") is not a mesh edge");
        if (edge_tris[it->second][1] != -1)
            throw SolverError("tagged boundary edge (" + std::to_string(be[0]) + "," +
                              std::to_string(be[1]) + ") is interior");
        edge_tag[it->second] = be[2];
    }
}

PrimalMesh PrimalMesh::structured(int nx, int ny, Vec2 lo, Vec2 hi, bool alternate_diagonal) {
    if (nx < 1 || ny < 1) throw SolverError("structured mesh requires nx, ny >= 1");
    if (!(hi.x > lo.x) || !(hi.y > lo.y)) throw SolverError("degenerate domain rectangle");

    PrimalMesh m;
    const double dx = (hi.x - lo.x) / nx;
    const double dy = (hi.y - lo.y) / ny;
    m.vertices.reserve((nx + 1) * (ny + 1));
    for (int j = 0; j <= ny; ++j)
        for (int i = 0; i <= nx; ++i)
            m.vertices.push_back({lo.x + i * dx, lo.y + j * dy});

    auto vid = [nx](int i, int j) { return j * (nx + 1) + i; };

    m.tris.reserve(2 * nx * ny);
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            int v00 = vid(i, j), v10 = vid(i + 1, j);
            int v01 = vid(i, j + 1), v11 = vid(i + 1, j + 1);
            bool diag_up = !alternate_diagonal || ((i + j) % 2 == 0);
            if (diag_up) {  // split along v00-v11
                m.tris.push_back({v00, v10, v11});
                m.tris.push_back({v00, v11, v01});
            } else {  // split along v10-v01
                m.tris.push_back({v00, v10, v01});
                m.tris.push_back({v10, v11, v01});
            }
        }
    }

    std::vector<std::array<int, 3>> btags;
    for (int i = 0; i < nx; ++i) {
        btags.push_back({vid(i, 0), vid(i + 1, 0), tag::bottom});
        btags.push_back({vid(i, ny), vid(i + 1, ny), tag::top});
    }
    for (int j = 0; j < ny; ++j) {
        btags.push_back({vid(nx, j), vid(nx, j + 1), tag::right});
        btags.push_back({vid(0, j), vid(0, j + 1), tag::left});
    }
    m.finalize(btags);
    return m;
}

} // namespace allmach
