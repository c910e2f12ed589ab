#pragma once

#include <array>
#include <vector>

#include "allmach/vec2.hpp"

namespace allmach {

// Triangular primal mesh. Triangles are stored counterclockwise; edges are
// extracted with canonical (low, high) vertex ordering. Boundary edges carry
// integer tags used by the boundary-condition table.
struct PrimalMesh {
    std::vector<Vec2> vertices;
    std::vector<std::array<int, 3>> tris;

    // derived geometry
    std::vector<Vec2> barycenter;
    std::vector<double> area;
    double domain_area = 0.0;

    // derived connectivity (build_edges)
    std::vector<std::array<int, 2>> edges;      // canonical (v0 < v1)
    std::vector<std::array<int, 2>> edge_tris;  // owner triangles, second = -1 on boundary
    std::vector<std::array<int, 3>> tri_edges;  // edge opposite local vertex k
    std::vector<int> edge_tag;                  // -1 interior, >=0 boundary tag
    std::vector<Vec2> edge_mid;

    int n_vertices() const { return static_cast<int>(vertices.size()); }
    int n_tris() const { return static_cast<int>(tris.size()); }
    int n_edges() const { return static_cast<int>(edges.size()); }

    // Computes barycenters/areas, enforces CCW orientation, extracts the edge
    // table and assigns boundary tags from `tagged_boundary` (pairs of vertex
    // ids with a tag). Untagged boundary edges get tag 0.
    void finalize(const std::vector<std::array<int, 3>>& tagged_boundary = {});

    // Structured triangulation of an axis-aligned rectangle: nx-by-ny squares,
    // each split into two triangles. Boundary tags: bottom=1, right=2, top=3,
    // left=4. With alternate_diagonal the split direction alternates in a
    // checkerboard pattern, which reduces directional bias on radially
    // symmetric problems.
    static PrimalMesh structured(int nx, int ny, Vec2 lo, Vec2 hi,
                                 bool alternate_diagonal = false);
};

// Boundary tag constants for structured meshes.
namespace tag {
constexpr int bottom = 1;
constexpr int right = 2;
constexpr int top = 3;
constexpr int left = 4;
} // namespace tag

} // namespace allmach
