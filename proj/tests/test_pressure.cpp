#include <cmath>
#include <numeric>

#include "allmach/oracles/taylor_green.hpp"
#include "allmach/pressure_fem.hpp"
#include "doctest.h"

using namespace allmach;

namespace {

struct Setup {
    PrimalMesh pm;
    DualMesh dm;
    FluidParams par;
    BoundaryTable bcs;
    FieldSet f;
};

Setup periodic_tgv(int n, double p0) {
    Setup s;
    s.pm = PrimalMesh::structured(n, n, {0.0, 0.0}, {2.0 * M_PI, 2.0 * M_PI});
    s.dm = DualMesh::build(s.pm, true, true);
    s.par.gamma = 1.4;
    for (int t : {tag::bottom, tag::right, tag::top, tag::left})
        s.bcs[t] = {BCType::Periodic, nullptr, 0.0, false};
    s.f = init_fields(s.pm, s.dm, s.par,
                      [&](Vec2 x) { return taylor_green_exact(x, p0, s.par.gamma); });
    return s;
}

} // namespace

TEST_CASE("dual-to-primal transfer") {
    auto m = PrimalMesh::structured(8, 8, {0.0, 0.0}, {1.0, 1.0});
    auto d = DualMesh::build(m);

    SUBCASE("constants are preserved and totals match") {
        std::vector<double> v(d.n_cells, 4.25);
        auto w = dual_to_primal(v, m, d);
        for (double x : w) CHECK(x == doctest::Approx(4.25).epsilon(1e-14));
    }

    SUBCASE("equal subelements average: (1,2,3) -> 2") {
        std::vector<double> v(d.n_cells, 0.0);
        int t = 12;
        v[d.edge_cell[m.tri_edges[t][0]]] = 1.0;
        v[d.edge_cell[m.tri_edges[t][1]]] = 2.0;
        v[d.edge_cell[m.tri_edges[t][2]]] = 3.0;
        CHECK(dual_to_primal(v, m, d)[t] == doctest::Approx(2.0).epsilon(1e-14));
    }

    SUBCASE("integral is conserved") {
        std::vector<double> v(d.n_cells);
        for (int c = 0; c < d.n_cells; ++c) v[c] = std::sin(3.0 * d.node[c].x) + d.node[c].y;
        auto w = dual_to_primal(v, m, d);
        double dual_total = 0.0, primal_total = 0.0;
        for (int c = 0; c < d.n_cells; ++c) dual_total += d.area[c] * v[c];
        for (int t = 0; t < m.n_tris(); ++t) primal_total += m.area[t] * w[t];
        CHECK(primal_total == doctest::Approx(dual_total).epsilon(1e-12));
    }

    SUBCASE("linear fields land near the barycenter value") {
        std::vector<double> v(d.n_cells);
        for (int c = 0; c < d.n_cells; ++c) v[c] = 2.0 * d.node[c].x - d.node[c].y;
        auto w = dual_to_primal(v, m, d);
        for (int t = 0; t < m.n_tris(); ++t)
            CHECK(w[t] ==
                  doctest::Approx(2.0 * m.barycenter[t].x - m.barycenter[t].y).epsilon(1e-12));
    }
}

TEST_CASE("assembled system is symmetric and SPD; zero sources give zero correction") {
    auto s = periodic_tgv(8, 1e4);
    PressureSolver solver(s.pm, s.dm);

    const int nt = s.pm.n_tris();
    std::vector<double> H_tri(nt, 2.5), rhoK_tri(nt, 0.0), We_tri(nt, 0.0);
    std::vector<double> H_cell(s.dm.n_cells, 2.5);
    std::vector<Vec2> Wu_tri(nt, Vec2{0.0, 0.0});
    std::vector<double> Pn(s.dm.n_dofs, 1.0);
    // We = P/(gamma-1) makes the energy source vanish identically
    for (int t = 0; t < nt; ++t) We_tri[t] = 1.0 / (s.par.gamma - 1.0);

    auto sys = solver.assemble(H_tri, rhoK_tri, We_tri, Wu_tri, Pn, H_cell, s.par, s.bcs, 0.01,
                               0.0, false);

    for (int r = 0; r < sys.A.n; ++r)
        for (int k = sys.A.row_ptr[r]; k < sys.A.row_ptr[r + 1]; ++k) {
            double a = sys.A.val[k];
            double b = sys.A.coeff(sys.A.col[k], r);
            CHECK(a == doctest::Approx(b).epsilon(1e-12));
        }

    double bmax = 0.0;
    for (double v : sys.b) bmax = std::max(bmax, std::abs(v));
    CHECK(bmax <= 1e-13);

    std::vector<double> x;
    auto cg = solve_spd(sys, x);
    CHECK(cg.iters == 0);
    for (double v : x) CHECK(v == 0.0);

    SUBCASE("non-positive enthalpy is rejected") {
        H_tri[3] = -1.0;
        CHECK_THROWS_WITH_AS(solver.assemble(H_tri, rhoK_tri, We_tri, Wu_tri, Pn, H_cell, s.par,
                                             s.bcs, 0.01, 0.0, false),
                             doctest::Contains("enthalpy"), SolverError);
    }
}

TEST_CASE("stiffness block on the reference triangle equals the P1 Laplacian") {
    PrimalMesh m;
    m.vertices = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
    m.tris = {{0, 1, 2}};
    m.finalize();
    auto d = DualMesh::build(m);
    PressureSolver solver(m, d);
    BoundaryTable bcs;
    bcs[0] = {BCType::Neumann, nullptr, 0.0, false};

    std::vector<double> H_tri{1.0}, rhoK_tri{0.0}, We_tri{0.0};
    std::vector<double> H_cell(3, 1.0), Pn(3, 0.0);
    std::vector<Vec2> Wu_tri{Vec2{0.0, 0.0}};
    FluidParams par;

    auto with_dt = [&](double dt) {
        return solver.assemble(H_tri, rhoK_tri, We_tri, Wu_tri, Pn, H_cell, par, bcs, dt, 0.0,
                               false);
    };
    auto s1 = with_dt(1.0);
    auto s0 = with_dt(0.0);

    // hand-computed element stiffness of the unit right triangle
    double K[3][3] = {{1.0, -0.5, -0.5}, {-0.5, 0.5, 0.0}, {-0.5, 0.0, 0.5}};
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            CHECK(s1.A.coeff(a, b) - s0.A.coeff(a, b) == doctest::Approx(K[a][b]).epsilon(1e-13));
}

TEST_CASE("conjugate gradients recovers manufactured solutions and flags indefiniteness") {
    auto s = periodic_tgv(8, 1e3);
    PressureSolver solver(s.pm, s.dm);
    const int nt = s.pm.n_tris();
    std::vector<double> H_tri(nt, 3.0), rhoK_tri(nt, 0.0), We_tri(nt, 2.5);
    std::vector<double> H_cell(s.dm.n_cells, 3.0), Pn(s.dm.n_dofs, 1.0);
    std::vector<Vec2> Wu_tri(nt, Vec2{0.0, 0.0});
    auto sys = solver.assemble(H_tri, rhoK_tri, We_tri, Wu_tri, Pn, H_cell, s.par, s.bcs, 0.05,
                               0.0, false);

    std::vector<double> xstar(sys.A.n);
    for (int i = 0; i < sys.A.n; ++i) xstar[i] = std::sin(0.13 * i) + 0.2;
    sys.A.apply(xstar, sys.b);
    std::vector<double> x;
    auto cg = solve_spd(sys, x, 1e-12);
    double err = 0.0, scale = 0.0;
    for (int i = 0; i < sys.A.n; ++i) {
        err += (x[i] - xstar[i]) * (x[i] - xstar[i]);
        scale += xstar[i] * xstar[i];
    }
    CHECK(std::sqrt(err / scale) <= 1e-9);
    CHECK(cg.iters > 0);

    SUBCASE("negative curvature detected") {
        PressureSystem bad;
        bad.A.n = 2;
        bad.A.row_ptr = {0, 2, 4};
        bad.A.col = {0, 1, 0, 1};
        bad.A.val = {1.0, 0.0, 0.0, -1.0};  // indefinite
        bad.b = {1.0, 1.0};
        std::vector<double> y;
        CHECK_THROWS_WITH_AS(solve_spd(bad, y), doctest::Contains("positive definite"),
                             SolverError);
    }

    SUBCASE("iteration cap raises") {
        sys.b.assign(sys.A.n, 1.0);
        std::vector<double> y;
        CHECK_THROWS_WITH_AS(solve_spd(sys, y, 1e-30, 2), doctest::Contains("converge"),
                             SolverError);
    }
}

TEST_CASE("low Mach limit: the pressure correction approaches the projection Poisson solve") {
    // one transport stage on the vortex, then compare dP against an
    // independently assembled and solved Poisson system on the same mesh
    double prev_defect = -1.0;
    for (double p0 : {1e3, 1e4, 1e5}) {
        auto s = periodic_tgv(16, p0);
        TransportOptions topt;
        topt.lader = true;
        TransportResult tr;
        const double dt = 0.05;
        transport_stage(s.f, s.pm, s.dm, s.par, s.bcs, dt, 0.0, topt, tr);

        PressureSolver solver(s.pm, s.dm);
        ProjectionOptions popt;
        popt.n_pic = 1;
        auto res = solver.run(tr, s.f, s.par, s.bcs, dt, 0.0, popt);

        // independent P1 Poisson assembly (plain loops, no solver machinery)
        const int nd = s.dm.n_dofs;
        std::vector<std::vector<double>> A(nd, std::vector<double>(nd, 0.0));
        std::vector<double> b(nd, 0.0);
        for (int t = 0; t < s.pm.n_tris(); ++t) {
            const auto& tri = s.pm.tris[t];
            double area = s.pm.area[t];
            Vec2 g[3];
            for (int k = 0; k < 3; ++k) {
                const Vec2& p1 = s.pm.vertices[tri[(k + 1) % 3]];
                const Vec2& p2 = s.pm.vertices[tri[(k + 2) % 3]];
                g[k] = Vec2{p1.y - p2.y, p2.x - p1.x} / (2.0 * area);
            }
            Vec2 wu{0.0, 0.0};
            for (int k = 0; k < 3; ++k) {
                int e = s.pm.tri_edges[t][k];
                wu += Vec2{tr.mom_x[s.dm.edge_cell[e]], tr.mom_y[s.dm.edge_cell[e]]} / 3.0;
            }
            for (int a = 0; a < 3; ++a) {
                int da = s.dm.vertex_dof[tri[a]];
                b[da] += wu.dot(g[a]) * area / dt;
                for (int bb = 0; bb < 3; ++bb)
                    A[da][s.dm.vertex_dof[tri[bb]]] += g[a].dot(g[bb]) * area;
            }
        }
        // plain CG on the singular but consistent system
        std::vector<double> q(nd, 0.0), r = b, p = r, Ap(nd);
        double rr = std::inner_product(r.begin(), r.end(), r.begin(), 0.0);
        for (int it = 0; it < 4000 && std::sqrt(rr) > 1e-12; ++it) {
            for (int i = 0; i < nd; ++i)
                Ap[i] = std::inner_product(A[i].begin(), A[i].end(), p.begin(), 0.0);
            double alpha = rr / std::inner_product(p.begin(), p.end(), Ap.begin(), 0.0);
            for (int i = 0; i < nd; ++i) {
                q[i] += alpha * p[i];
                r[i] -= alpha * Ap[i];
            }
            double rr2 = std::inner_product(r.begin(), r.end(), r.begin(), 0.0);
            for (int i = 0; i < nd; ++i) p[i] = r[i] + (rr2 / rr) * p[i];
            rr = rr2;
        }

        auto demean = [&](std::vector<double> v) {
            double mean = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
            for (double& x : v) x -= mean;
            return v;
        };
        auto dp = demean(res.dP);
        auto dq = demean(q);
        double num = 0.0, den = 0.0;
        for (int i = 0; i < nd; ++i) {
            num += (dp[i] - dq[i]) * (dp[i] - dq[i]);
            den += dq[i] * dq[i];
        }
        double defect = std::sqrt(num / den);
        if (prev_defect > 0.0) CHECK(defect < 0.35 * prev_defect);  // shrinks like M^2 ~ 1/p0
        prev_defect = defect;
    }
    CHECK(prev_defect < 1e-3);
}

TEST_CASE("second Picard iteration improves the vortex pressure") {
    auto run_with = [&](int n_pic) {
        auto s = periodic_tgv(32, 1e5);
        TransportOptions topt;
        topt.lader = true;
        TransportResult tr;
        const double dt = 0.125;
        transport_stage(s.f, s.pm, s.dm, s.par, s.bcs, dt, 0.0, topt, tr);
        PressureSolver solver(s.pm, s.dm);
        ProjectionOptions popt;
        popt.n_pic = n_pic;
        auto res = solver.run(tr, s.f, s.par, s.bcs, dt, 0.0, popt);
        double err = 0.0;
        for (int v = 0; v < s.pm.n_vertices(); ++v) {
            double ex = taylor_green_exact(s.pm.vertices[v], 1e5, 1.4).p;
            double e = res.P[s.dm.vertex_dof[v]] - ex;
            err += e * e * s.dm.dof_area[s.dm.vertex_dof[v]];
        }
        return std::sqrt(err);
    };
    double e1 = run_with(1), e2 = run_with(2);
    CHECK(e2 <= e1 * (1.0 + 1e-12));
}

TEST_CASE("post-projection energy update") {
    auto s = periodic_tgv(8, 1e4);
    const int nc = s.dm.n_cells;

    SUBCASE("uniform state is unchanged by both variants") {
        std::vector<double> We(nc, 7.0), H(nc, 2.0), mx(nc, 0.4), my(nc, -0.2);
        auto We_tri = dual_to_primal(We, s.pm, s.dm);
        for (bool inc : {false, true}) {
            auto out = post_projection_energy(We, We_tri, H, mx, my, s.pm, s.dm, s.par, s.bcs,
                                              0.01, 0.0, inc);
            for (int c = 0; c < nc; ++c) CHECK(out[c] == doctest::Approx(7.0).epsilon(1e-13));
        }
    }

    SUBCASE("discretely divergence-free flux leaves the increment variant exact") {
        std::vector<double> We(nc), H(nc, 3.0), mx(nc, 0.0), my(nc, 0.0);
        for (int c = 0; c < nc; ++c) We[c] = 5.0 + std::sin(s.dm.node[c].x);
        auto We_tri = dual_to_primal(We, s.pm, s.dm);
        auto out = post_projection_energy(We, We_tri, H, mx, my, s.pm, s.dm, s.par, s.bcs, 0.02,
                                          0.0, true);
        for (int c = 0; c < nc; ++c) CHECK(out[c] == doctest::Approx(We[c]).epsilon(1e-13));
    }

    SUBCASE("periodic energy total is conserved by both variants") {
        std::vector<double> We(nc), H(nc), mx(nc), my(nc);
        for (int c = 0; c < nc; ++c) {
            We[c] = 5.0 + std::sin(s.dm.node[c].x);
            H[c] = 2.0 + 0.5 * std::cos(s.dm.node[c].y);
            mx[c] = std::sin(s.dm.node[c].y);
            my[c] = std::cos(s.dm.node[c].x);
        }
        auto We_tri = dual_to_primal(We, s.pm, s.dm);
        double before = 0.0;
        for (int c = 0; c < nc; ++c) before += s.dm.area[c] * We[c];
        for (bool inc : {false, true}) {
            auto out = post_projection_energy(We, We_tri, H, mx, my, s.pm, s.dm, s.par, s.bcs,
                                              0.02, 0.0, inc);
            double after = 0.0;
            for (int c = 0; c < nc; ++c) after += s.dm.area[c] * out[c];
            CHECK(after == doctest::Approx(before).epsilon(1e-12));
        }
    }
}
