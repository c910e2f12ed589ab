#include "allmach/dual_mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "allmach/state.hpp"

namespace allmach {

namespace {

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
    Vec2 d = b - a;
    double len2 = d.norm2();
    double t = len2 > 0.0 ? std::clamp((p - a).dot(d) / len2, 0.0, 1.0) : 0.0;
    return (p - (a + d * t)).norm();
}

bool point_in_polygon(const Vec2& p, const std::vector<Vec2>& poly) {
    bool inside = false;
    int n = static_cast<int>(poly.size());
    for (int k = 0, m = n - 1; k < n; m = k++) {
        if ((poly[k].y > p.y) != (poly[m].y > p.y)) {
            double xint = poly[m].x + (poly[k].x - poly[m].x) * (p.y - poly[m].y) /
                                          (poly[k].y - poly[m].y);
            if (p.x < xint) inside = !inside;
        }
    }
    return inside;
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

// Matched boundary-edge pairs for one periodic axis.
struct PeriodicPairs {
    std::vector<std::array<int, 2>> edge_pairs;    // (low-side edge, high-side edge)
    std::vector<std::array<int, 2>> vertex_pairs;
};

PeriodicPairs match_periodic(const PrimalMesh& primal, int axis) {
    double lo = std::numeric_limits<double>::max(), hi = -lo;
    double olo = lo, ohi = -lo;
    for (const auto& v : primal.vertices) {
        double c = axis == 0 ? v.x : v.y;
        double o = axis == 0 ? v.y : v.x;
        lo = std::min(lo, c);
        hi = std::max(hi, c);
        olo = std::min(olo, o);
        ohi = std::max(ohi, o);
    }
    const double tol = 1e-10 * std::max(hi - lo, ohi - olo);

    std::vector<std::pair<double, int>> side_lo, side_hi;
    for (int e = 0; e < primal.n_edges(); ++e) {
        if (primal.edge_tris[e][1] != -1) continue;
        double c = axis == 0 ? primal.edge_mid[e].x : primal.edge_mid[e].y;
        double o = axis == 0 ? primal.edge_mid[e].y : primal.edge_mid[e].x;
        if (std::abs(c - lo) < tol) side_lo.emplace_back(o, e);
        else if (std::abs(c - hi) < tol) side_hi.emplace_back(o, e);
    }
    if (side_lo.size() != side_hi.size() || side_lo.empty())
        throw SolverError("mesh is not periodic in " + std::string(axis == 0 ? "x" : "y") +
                          ": " + std::to_string(side_lo.size()) + " vs " +
                          std::to_string(side_hi.size()) + " boundary edges");
    std::sort(side_lo.begin(), side_lo.end());
    std::sort(side_hi.begin(), side_hi.end());

    PeriodicPairs pairs;
    for (size_t k = 0; k < side_lo.size(); ++k) {
        if (std::abs(side_lo[k].first - side_hi[k].first) > tol)
            throw SolverError("unmatched periodic boundary edge at coordinate " +
                              std::to_string(side_lo[k].first) + " vs " +
                              std::to_string(side_hi[k].first));
        int ea = side_lo[k].second, eb = side_hi[k].second;
        pairs.edge_pairs.push_back({ea, eb});
        // match endpoints by the transverse coordinate
        for (int s = 0; s < 2; ++s) {
            int va = primal.edges[ea][s];
            double oa = axis == 0 ? primal.vertices[va].y : primal.vertices[va].x;
            int best = -1;
            for (int r = 0; r < 2; ++r) {
                int vb = primal.edges[eb][r];
                double ob = axis == 0 ? primal.vertices[vb].y : primal.vertices[vb].x;
                if (std::abs(oa - ob) < tol) best = vb;
            }
            if (best < 0)
                throw SolverError("unmatched periodic boundary vertex at coordinate " +
                                  std::to_string(oa));
            pairs.vertex_pairs.push_back({va, best});
        }
    }
    return pairs;
}

} // namespace

double incircle_diameter(const std::vector<Vec2>& poly) {
    const int n = static_cast<int>(poly.size());
    if (n < 3) throw SolverError("incircle_diameter: polygon needs at least 3 vertices");

    if (n == 3) {
        double a = (poly[1] - poly[2]).norm();
        double b = (poly[2] - poly[0]).norm();
        double c = (poly[0] - poly[1]).norm();
        double A = std::abs(triangle_area(poly[0], poly[1], poly[2]));
        return 4.0 * A / (a + b + c);  // 2 * area / semiperimeter
    }

    // inward unit normals of the (CCW-oriented) polygon edges
    double signed_area = 0.0;
    for (int k = 0; k < n; ++k) signed_area += poly[k].cross(poly[(k + 1) % n]);
    double orient = signed_area > 0.0 ? 1.0 : -1.0;

    std::vector<Vec2> pt(n), nrm(n);
    for (int k = 0; k < n; ++k) {
        pt[k] = poly[k];
        Vec2 d = poly[(k + 1) % n] - poly[k];
        nrm[k] = d.perp() * (orient / d.norm());  // points into the polygon
    }

    auto radius_at = [&](const Vec2& c) {
        double r = std::numeric_limits<double>::max();
        for (int k = 0; k < n; ++k)
            r = std::min(r, point_segment_distance(c, poly[k], poly[(k + 1) % n]));
        return r;
    };

    double best = 0.0;
    // centers equidistant from three edge lines
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c) {
                // solve n_k . x - r = n_k . p_k for (x, y, r)
                double M[3][4] = {
                    {nrm[a].x, nrm[a].y, -1.0, nrm[a].dot(pt[a])},
                    {nrm[b].x, nrm[b].y, -1.0, nrm[b].dot(pt[b])},
                    {nrm[c].x, nrm[c].y, -1.0, nrm[c].dot(pt[c])},
                };
                // gaussian elimination with partial pivoting
                bool singular = false;
                for (int col = 0; col < 3 && !singular; ++col) {
                    int piv = col;
                    for (int r = col + 1; r < 3; ++r)
                        if (std::abs(M[r][col]) > std::abs(M[piv][col])) piv = r;
                    if (std::abs(M[piv][col]) < 1e-14) {
                        singular = true;
                        break;
                    }
                    std::swap(M[col], M[piv]);
                    for (int r = 0; r < 3; ++r) {
                        if (r == col) continue;
                        double f = M[r][col] / M[col][col];
                        for (int cc = col; cc < 4; ++cc) M[r][cc] -= f * M[col][cc];
                    }
                }
                if (singular) continue;
                Vec2 center{M[0][3] / M[0][0], M[1][3] / M[1][1]};
                double r = M[2][3] / M[2][2];
                if (r <= 0.0 || !point_in_polygon(center, poly)) continue;
                best = std::max(best, radius_at(center));
            }
    // fall back on sub-triangle incenters for non-convex shapes
    for (int k = 1; k + 1 < n; ++k) {
        Vec2 p0 = poly[0], p1 = poly[k], p2 = poly[k + 1];
        double a = (p1 - p2).norm(), b = (p2 - p0).norm(), c = (p0 - p1).norm();
        Vec2 inc = (p0 * a + p1 * b + p2 * c) / (a + b + c);
        if (point_in_polygon(inc, poly)) best = std::max(best, radius_at(inc));
    }
    return 2.0 * best;
}

DualMesh DualMesh::build(const PrimalMesh& primal, bool px, bool py) {
    const int ne = primal.n_edges();
    DualMesh d;
    d.periodic_x = px;
    d.periodic_y = py;

    UnionFind cell_uf(ne);
    UnionFind vert_uf(primal.n_vertices());
    std::vector<int> edge_partner(ne, -1);

    for (int axis = 0; axis < 2; ++axis) {
        if (!(axis == 0 ? px : py)) continue;
        PeriodicPairs pairs = match_periodic(primal, axis);
        for (auto& ep : pairs.edge_pairs) {
            cell_uf.unite(ep[0], ep[1]);
            edge_partner[ep[0]] = ep[1];
            edge_partner[ep[1]] = ep[0];
        }
        for (auto& vp : pairs.vertex_pairs) vert_uf.unite(vp[0], vp[1]);
    }

    // compress cells
    std::vector<int> cell_id(ne, -1);
    d.edge_cell.resize(ne);
    int nc = 0;
    for (int e = 0; e < ne; ++e)
        if (cell_uf.find(e) == e) cell_id[e] = nc++;
    for (int e = 0; e < ne; ++e) d.edge_cell[e] = cell_id[cell_uf.find(e)];
    d.n_cells = nc;

    // owners; merged boundary edges adopt the partner's owner as their second
    d.edge_owner.resize(ne);
    for (int e = 0; e < ne; ++e) {
        d.edge_owner[e] = primal.edge_tris[e];
        if (d.edge_owner[e][1] == -1 && edge_partner[e] >= 0)
            d.edge_owner[e][1] = primal.edge_tris[edge_partner[e]][0];
    }

    d.area.assign(nc, 0.0);
    d.node.assign(nc, Vec2{});
    d.is_boundary.assign(nc, 0);
    std::vector<int> rep_edge(nc, -1);
    for (int e = 0; e < ne; ++e) {
        int c = d.edge_cell[e];
        for (int s = 0; s < 2; ++s)
            if (primal.edge_tris[e][s] >= 0) d.area[c] += primal.area[primal.edge_tris[e][s]] / 3.0;
        if (rep_edge[c] < 0 || e < rep_edge[c]) rep_edge[c] = e;
        if (primal.edge_tris[e][1] == -1 && edge_partner[e] < 0) d.is_boundary[c] = 1;
    }
    for (int c = 0; c < nc; ++c) d.node[c] = primal.edge_mid[rep_edge[c]];
    d.cell_edge = rep_edge;

    // interior faces: one per (triangle, vertex)
    d.cell_faces.assign(nc, {});
    d.cell_bfaces.assign(nc, {});
    for (int t = 0; t < primal.n_tris(); ++t) {
        const Vec2 B = primal.barycenter[t];
        for (int k = 0; k < 3; ++k) {
            int v = primal.tris[t][k];
            int e1 = primal.tri_edges[t][(k + 1) % 3];  // edges meeting at vertex v
            int e2 = primal.tri_edges[t][(k + 2) % 3];
            DualFace f;
            f.tri = t;
            f.edge_i = e1;
            f.edge_j = e2;
            f.i = d.edge_cell[e1];
            f.j = d.edge_cell[e2];
            const Vec2 V = primal.vertices[v];
            f.center = (V + B) * 0.5;
            f.xi = primal.edge_mid[e1];
            f.xj = primal.edge_mid[e2];
            Vec2 n = (B - V).perp();
            // orient out of cell i (the e1 side)
            Vec2 g1 = (primal.vertices[primal.edges[e1][0]] + primal.vertices[primal.edges[e1][1]] + B) / 3.0;
            Vec2 g2 = (primal.vertices[primal.edges[e2][0]] + primal.vertices[primal.edges[e2][1]] + B) / 3.0;
            if (n.dot(g2 - g1) < 0.0) n = -n;
            f.normal = n;
            int fid = static_cast<int>(d.faces.size());
            d.faces.push_back(f);
            d.cell_faces[f.i].push_back({fid, +1});
            d.cell_faces[f.j].push_back({fid, -1});
        }
    }

    // boundary faces
    for (int e = 0; e < ne; ++e) {
        if (primal.edge_tris[e][1] != -1 || edge_partner[e] >= 0) continue;
        BoundaryFace bf;
        bf.edge = e;
        bf.cell = d.edge_cell[e];
        bf.tri = primal.edge_tris[e][0];
        bf.tag = primal.edge_tag[e];
        bf.center = primal.edge_mid[e];
        Vec2 n = (primal.vertices[primal.edges[e][1]] - primal.vertices[primal.edges[e][0]]).perp();
        if (n.dot(primal.barycenter[bf.tri] - bf.center) > 0.0) n = -n;
        bf.normal = n;
        int bid = static_cast<int>(d.bfaces.size());
        d.bfaces.push_back(bf);
        d.cell_bfaces[bf.cell].push_back(bid);
    }

    // incircle diameters
    d.incircle.assign(nc, 0.0);
    for (int e = 0; e < ne; ++e) {
        if (cell_uf.find(e) != e) continue;  // representative edges only
        int c = d.edge_cell[e];
        const Vec2 v0 = primal.vertices[primal.edges[e][0]];
        const Vec2 v1 = primal.vertices[primal.edges[e][1]];
        std::vector<Vec2> poly;
        if (primal.edge_tris[e][1] != -1) {
            poly = {v0, primal.barycenter[primal.edge_tris[e][0]], v1,
                    primal.barycenter[primal.edge_tris[e][1]]};
        } else if (edge_partner[e] >= 0) {
            int ep = edge_partner[e];
            Vec2 shift = primal.edge_mid[ep] - primal.edge_mid[e];
            poly = {v0, primal.barycenter[primal.edge_tris[e][0]], v1,
                    primal.barycenter[primal.edge_tris[ep][0]] - shift};
        } else {
            poly = {v0, primal.barycenter[primal.edge_tris[e][0]], v1};
        }
        d.incircle[c] = incircle_diameter(poly);
    }

    // pressure dofs: merged vertices share one unknown
    d.vertex_dof.assign(primal.n_vertices(), -1);
    int ndof = 0;
    for (int v = 0; v < primal.n_vertices(); ++v)
        if (vert_uf.find(v) == v) d.vertex_dof[v] = ndof++;
    for (int v = 0; v < primal.n_vertices(); ++v) d.vertex_dof[v] = d.vertex_dof[vert_uf.find(v)];
    d.n_dofs = ndof;

    d.dof_area.assign(ndof, 0.0);
    for (int t = 0; t < primal.n_tris(); ++t)
        for (int k = 0; k < 3; ++k)
            d.dof_area[d.vertex_dof[primal.tris[t][k]]] += primal.area[t] / 3.0;

    return d;
}

std::pair<DualMesh, std::vector<int>> merge_periodic(const DualMesh& dual,
                                                     const PrimalMesh& primal, int axis) {
    bool px = dual.periodic_x || axis == 0;
    bool py = dual.periodic_y || axis == 1;
    DualMesh merged = DualMesh::build(primal, px, py);

    std::vector<int> vertex_map(primal.n_vertices());
    std::vector<int> dof_rep(merged.n_dofs, -1);
    for (int v = 0; v < primal.n_vertices(); ++v) {
        int dof = merged.vertex_dof[v];
        if (dof_rep[dof] < 0) dof_rep[dof] = v;
        vertex_map[v] = dof_rep[dof];
    }
    return {std::move(merged), std::move(vertex_map)};
}

} // namespace allmach
