#include <cmath>
#include <numeric>

#include "allmach/dual_mesh.hpp"
#include "allmach/state.hpp"
#include "doctest.h"

using namespace allmach;

namespace {

PrimalMesh single_triangle() {
    PrimalMesh m;
    m.vertices = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
    m.tris = {{0, 1, 2}};
    m.finalize();
    return m;
}

PrimalMesh two_triangle_square() {
    PrimalMesh m;
    m.vertices = {{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}};
    m.tris = {{0, 1, 2}, {0, 2, 3}};
    m.finalize({{0, 1, tag::bottom}, {1, 2, tag::right}, {2, 3, tag::top}, {0, 3, tag::left}});
    return m;
}

} // namespace

TEST_CASE("structured mesh counts match the reference grids") {
    auto m1 = PrimalMesh::structured(16, 16, {0.0, 0.0}, {2.0 * M_PI, 2.0 * M_PI});
    CHECK(m1.n_tris() == 512);
    CHECK(m1.n_vertices() == 289);

    auto m2 = PrimalMesh::structured(32, 32, {0.0, 0.0}, {2.0 * M_PI, 2.0 * M_PI});
    CHECK(m2.n_tris() == 2048);
    CHECK(m2.n_vertices() == 1089);

    auto tiny = PrimalMesh::structured(1, 1, {0.0, 0.0}, {1.0, 1.0});
    CHECK(tiny.n_tris() == 2);
    CHECK(tiny.n_vertices() == 4);

    CHECK_THROWS_AS(PrimalMesh::structured(4, 4, {0.0, 0.0}, {0.0, 1.0}), SolverError);
    CHECK_THROWS_AS(PrimalMesh::structured(0, 4, {0.0, 0.0}, {1.0, 1.0}), SolverError);
}

TEST_CASE("triangle areas positive and domain area exact") {
    auto m = PrimalMesh::structured(7, 5, {-1.0, 2.0}, {3.0, 4.0});
    double sum = 0.0;
    for (double a : m.area) {
        CHECK(a > 0.0);
        sum += a;
    }
    CHECK(sum == doctest::Approx(8.0).epsilon(1e-13));
    CHECK(m.domain_area == doctest::Approx(8.0).epsilon(1e-13));
}

TEST_CASE("dual mesh of a single triangle: three boundary cells of area |T|/3") {
    auto m = single_triangle();
    auto d = DualMesh::build(m);
    CHECK(d.n_cells == 3);
    for (int c = 0; c < 3; ++c) {
        CHECK(d.area[c] == doctest::Approx(0.5 / 3.0).epsilon(1e-13));
        CHECK(d.is_boundary[c] == 1);
    }
}

TEST_CASE("dual mesh of the two-triangle square: 5 cells, unit total area") {
    auto m = two_triangle_square();
    auto d = DualMesh::build(m);
    CHECK(d.n_cells == 5);
    int interior = 0;
    double total = 0.0;
    for (int c = 0; c < d.n_cells; ++c) {
        total += d.area[c];
        if (!d.is_boundary[c]) ++interior;
    }
    CHECK(interior == 1);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("dual element counts of the convergence meshes") {
    struct Row {
        int n, tris, verts, duals;
    };
    for (Row r : {Row{16, 512, 289, 800}, Row{32, 2048, 1089, 3136}, Row{64, 8192, 4225, 12416}}) {
        auto m = PrimalMesh::structured(r.n, r.n, {0.0, 0.0}, {2.0 * M_PI, 2.0 * M_PI});
        REQUIRE(m.n_tris() == r.tris);
        REQUIRE(m.n_vertices() == r.verts);
        auto d = DualMesh::build(m);
        CHECK(d.n_cells == r.duals);
    }
}

TEST_CASE("dual mesh partition of unity and closed-cell normal sums") {
    auto m = PrimalMesh::structured(9, 7, {0.0, 0.0}, {1.3, 1.1});
    auto d = DualMesh::build(m);

    double total = std::accumulate(d.area.begin(), d.area.end(), 0.0);
    CHECK(total == doctest::Approx(m.domain_area).epsilon(1e-12));

    for (int c = 0; c < d.n_cells; ++c) {
        Vec2 sum{0.0, 0.0};
        double perim = 0.0;
        for (auto [fid, sign] : d.cell_faces[c]) {
            sum += d.faces[fid].normal * double(sign);
            perim += d.faces[fid].normal.norm();
        }
        for (int b : d.cell_bfaces[c]) {
            sum += d.bfaces[b].normal;
            perim += d.bfaces[b].normal.norm();
        }
        CHECK(sum.norm() <= 1e-12 * perim);
    }
}

TEST_CASE("subelement areas are one third of the triangle") {
    auto m = PrimalMesh::structured(5, 4, {0.0, 0.0}, {2.0, 1.0});
    for (int t = 0; t < m.n_tris(); ++t)
        for (int k = 0; k < 3; ++k) {
            int e = m.tri_edges[t][k];
            double sub = std::abs(triangle_area(m.vertices[m.edges[e][0]],
                                                m.vertices[m.edges[e][1]], m.barycenter[t]));
            CHECK(sub == doctest::Approx(m.area[t] / 3.0).epsilon(1e-13));
        }
}

TEST_CASE("face geometry: normal length, center, and node positions") {
    auto m = two_triangle_square();
    auto d = DualMesh::build(m);
    for (const auto& F : d.faces) {
        // the face joins a vertex to the barycenter of its triangle
        Vec2 B = m.barycenter[F.tri];
        CHECK(F.normal.norm() > 0.0);
        // center halfway between some vertex and B
        bool found = false;
        for (const auto& v : m.vertices)
            if ((F.center - (v + B) * 0.5).norm() < 1e-14) found = true;
        CHECK(found);
        CHECK((F.xi - m.edge_mid[F.edge_i]).norm() < 1e-14);
        CHECK((F.xj - m.edge_mid[F.edge_j]).norm() < 1e-14);
    }
}

TEST_CASE("non-manifold edge rejected") {
    PrimalMesh m;
    m.vertices = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}, {-1.0, 1.0}};
    m.tris = {{0, 1, 2}, {0, 1, 3}, {0, 1, 4}};
    CHECK_THROWS_WITH_AS(m.finalize(), doctest::Contains("non-manifold"), SolverError);
}

TEST_CASE("periodic merge: unknown count drops from 289 to 256") {
    auto m = PrimalMesh::structured(16, 16, {0.0, 0.0}, {2.0 * M_PI, 2.0 * M_PI});
    auto d0 = DualMesh::build(m);
    CHECK(d0.n_dofs == 289);

    auto [dx, mapx] = merge_periodic(d0, m, 0);
    CHECK(dx.n_dofs == 272);  // 17 columns fused to 16
    auto [dxy, mapxy] = merge_periodic(dx, m, 1);
    CHECK(dxy.n_dofs == 256);
    CHECK(dxy.n_cells == 800 - 32);

    double total = std::accumulate(dxy.area.begin(), dxy.area.end(), 0.0);
    CHECK(total == doctest::Approx(m.domain_area).epsilon(1e-12));

    // fused cells are interior: no boundary faces anywhere
    CHECK(dxy.bfaces.empty());
    for (int c = 0; c < dxy.n_cells; ++c) {
        Vec2 sum{0.0, 0.0};
        for (auto [fid, sign] : dxy.cell_faces[c]) sum += dxy.faces[fid].normal * double(sign);
        CHECK(sum.norm() <= 1e-12);
    }
}

TEST_CASE("periodic merge of the two-triangle square fuses the lateral cells") {
    auto m = two_triangle_square();
    auto d0 = DualMesh::build(m);
    auto [dx, map] = merge_periodic(d0, m, 0);
    CHECK(dx.n_cells == 4);
    int interior = 0;
    for (int c = 0; c < dx.n_cells; ++c)
        if (!dx.is_boundary[c]) ++interior;
    CHECK(interior == 2);  // the diagonal cell plus the fused pair
    double total = std::accumulate(dx.area.begin(), dx.area.end(), 0.0);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("periodic request on a non-periodic mesh names the offending coordinate") {
    PrimalMesh m = PrimalMesh::structured(3, 3, {0.0, 0.0}, {1.0, 1.0});
    m.vertices[3 * 4 + 0].y += 0.07;  // perturb a left-boundary vertex
    m.finalize();
    auto d = DualMesh::build(m);
    CHECK_THROWS_AS((void)merge_periodic(d, m, 0), SolverError);
}

TEST_CASE("incircle diameters") {
    CHECK(incircle_diameter({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}}) ==
          doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-12));
    CHECK(incircle_diameter({{0.0, 0.0}, {1.0, 0.0}, {0.5, std::sqrt(3.0) / 2.0}}) ==
          doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
    // unit square: the inscribed circle has diameter 1
    CHECK(incircle_diameter({{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}}) ==
          doctest::Approx(1.0).epsilon(1e-10));

    auto m = PrimalMesh::structured(16, 16, {0.0, 0.0}, {2.0 * M_PI, 2.0 * M_PI});
    auto d = DualMesh::build(m);
    const double h = 2.0 * M_PI / 16.0;
    for (int c = 0; c < d.n_cells; ++c) {
        CHECK(d.incircle[c] > 0.0);
        CHECK(d.incircle[c] < h);
    }
}

TEST_CASE("upwind triangles straddle the cell across its primal edge") {
    auto m = PrimalMesh::structured(4, 4, {0.0, 0.0}, {1.0, 1.0});
    auto d = DualMesh::build(m);
    for (const auto& F : d.faces) {
        int tL = d.upwind_tri(F.edge_i, F.tri);
        CHECK(tL >= 0);
        if (m.edge_tris[F.edge_i][1] != -1) CHECK(tL != F.tri);
        else CHECK(tL == F.tri);
    }
}
