#include <cmath>

#include "allmach/gradients.hpp"
#include "doctest.h"

using namespace allmach;

namespace {

std::vector<double> sample_at_nodes(const DualMesh& d, double (*f)(Vec2)) {
    std::vector<double> v(d.n_cells);
    for (int c = 0; c < d.n_cells; ++c) v[c] = f(d.node[c]);
    return v;
}

} // namespace

TEST_CASE("edge-midpoint gradients reproduce linear fields exactly") {
    auto m = PrimalMesh::structured(6, 5, {-0.3, 0.2}, {1.7, 1.4});
    auto d = DualMesh::build(m);
    auto vals = sample_at_nodes(d, [](Vec2 x) { return 2.0 * x.x + 3.0 * x.y - 1.0; });
    auto g = galerkin_gradients(vals, m, d);
    for (const auto& gr : g) {
        CHECK(gr.x == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(gr.y == doctest::Approx(3.0).epsilon(1e-12));
    }
}

TEST_CASE("constant fields have zero gradients") {
    auto m = PrimalMesh::structured(4, 4, {0.0, 0.0}, {1.0, 1.0});
    auto d = DualMesh::build(m);
    std::vector<double> vals(d.n_cells, 7.5);
    for (const auto& gr : galerkin_gradients(vals, m, d)) CHECK(gr.norm() <= 1e-13);
}

TEST_CASE("quadratic field: gradient converges at first order at barycenters") {
    double prev_err = 0.0;
    for (int n : {16, 32}) {
        auto m = PrimalMesh::structured(n, n, {0.0, 0.0}, {2.0 * M_PI, 2.0 * M_PI});
        auto d = DualMesh::build(m);
        auto vals = sample_at_nodes(d, [](Vec2 x) { return x.x * x.x; });
        auto g = galerkin_gradients(vals, m, d);
        double err = 0.0;
        for (int t = 0; t < m.n_tris(); ++t)
            err = std::max(err, std::abs(g[t].x - 2.0 * m.barycenter[t].x) + std::abs(g[t].y));
        if (prev_err > 0.0) CHECK(err < 0.75 * prev_err);
        prev_err = err;
        CHECK(err < 2.0 * (2.0 * M_PI / n));
    }
}

TEST_CASE("boundary-edge overrides enter the reconstruction") {
    auto m = PrimalMesh::structured(3, 3, {0.0, 0.0}, {1.0, 1.0});
    auto d = DualMesh::build(m);
    std::vector<double> vals(d.n_cells, 0.0);
    DofOverride ov;
    ov.resize(m.n_edges());
    // prescribe a unit value on every boundary edge: boundary triangles see it
    for (int e = 0; e < m.n_edges(); ++e)
        if (m.edge_tris[e][1] == -1) ov.set(e, 1.0);
    auto g = galerkin_gradients(vals, m, d, &ov);
    bool some_nonzero = false;
    for (const auto& gr : g) some_nonzero |= gr.norm() > 0.1;
    CHECK(some_nonzero);
}

TEST_CASE("P1 vertex gradient is exact for linear dof fields") {
    auto m = PrimalMesh::structured(5, 3, {0.0, 0.0}, {2.0, 1.0});
    auto d = DualMesh::build(m);
    std::vector<double> p(d.n_dofs);
    for (int v = 0; v < m.n_vertices(); ++v)
        p[d.vertex_dof[v]] = 4.0 * m.vertices[v].x - 2.5 * m.vertices[v].y + 0.5;
    for (int t = 0; t < m.n_tris(); ++t) {
        Vec2 g = p1_gradient(p, m, d, t);
        CHECK(g.x == doctest::Approx(4.0).epsilon(1e-12));
        CHECK(g.y == doctest::Approx(-2.5).epsilon(1e-12));
    }
}
