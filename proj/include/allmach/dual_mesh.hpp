#pragma once

#include <array>
#include <utility>
#include <vector>

#include "allmach/mesh.hpp"

namespace allmach {

// Interior face of the staggered dual mesh: a segment joining a primal vertex
// to a primal barycenter, contained in exactly one primal triangle. It
// separates the dual cells of the two triangle edges meeting at that vertex.
struct DualFace {
    int i = -1, j = -1;    // dual cell ids; `normal` points out of cell i
    int tri = -1;          // containing primal triangle
    int edge_i = -1;       // primal edge whose cell is i
    int edge_j = -1;
    Vec2 normal;           // scaled normal, |normal| = face length
    Vec2 center;           // face barycenter N_ij
    Vec2 xi, xj;           // node positions N_i, N_j local to `tri`
};

// Face of a boundary dual cell lying on the domain boundary (a primal edge).
struct BoundaryFace {
    int cell = -1;
    int tri = -1;
    int edge = -1;         // primal edge id
    int tag = 0;
    Vec2 normal;           // scaled outward normal
    Vec2 center;
};

// Edge-based dual mesh. One cell per primal edge; interior cells merge the two
// barycentric triangles on either side of the edge, boundary cells consist of
// a single one. Periodic directions fuse matching boundary cells into interior
// cells and merge the corresponding pressure vertices.
struct DualMesh {
    int n_cells = 0;
    bool periodic_x = false, periodic_y = false;

    std::vector<double> area;        // |C_i|
    std::vector<double> incircle;    // incircle diameter r_i
    std::vector<Vec2> node;          // N_i
    std::vector<char> is_boundary;   // cell has a boundary face

    std::vector<DualFace> faces;
    std::vector<BoundaryFace> bfaces;
    std::vector<std::vector<std::pair<int, int>>> cell_faces;  // (face id, +-1)
    std::vector<std::vector<int>> cell_bfaces;

    std::vector<int> edge_cell;                   // primal edge -> cell
    std::vector<int> cell_edge;                   // cell -> representative primal edge
    std::vector<std::array<int, 2>> edge_owner;   // owner triangles (partner's on merged edges)

    // pressure unknowns (primal vertices, merged across periodic boundaries)
    int n_dofs = 0;
    std::vector<int> vertex_dof;
    std::vector<double> dof_area;    // lumped areas

    static DualMesh build(const PrimalMesh& primal, bool periodic_x = false,
                          bool periodic_y = false);

    // Triangle across primal edge `e` as seen from triangle `t`; returns `t`
    // itself when there is none (true boundary edge).
    int upwind_tri(int e, int t) const {
        int o = (edge_owner[e][0] == t) ? edge_owner[e][1] : edge_owner[e][0];
        return o >= 0 ? o : t;
    }

    double subelement_area(const PrimalMesh& primal, int t) const { return primal.area[t] / 3.0; }
};

// Fuses matching boundary dual cells along one axis (0 = x, 1 = y) and merges
// the paired pressure vertices. Returns the updated mesh and the vertex merge
// map (vertex -> representative vertex).
std::pair<DualMesh, std::vector<int>> merge_periodic(const DualMesh& dual,
                                                     const PrimalMesh& primal,
                                                     int axis);

// Diameter of the largest inscribed circle of a simple polygon (exact for
// triangles and convex polygons).
double incircle_diameter(const std::vector<Vec2>& poly);

} // namespace allmach
