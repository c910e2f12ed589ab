#include <cmath>

#include "allmach/oracles/taylor_green.hpp"
#include "allmach/transport.hpp"
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

Setup periodic_box(int n, const std::function<Primitive(Vec2)>& ic, double lo = 0.0,
                   double hi = 2.0 * M_PI) {
    Setup s;
    s.pm = PrimalMesh::structured(n, n, {lo, lo}, {hi, hi});
    s.dm = DualMesh::build(s.pm, true, true);
    s.par.gamma = 1.4;
    for (int t : {tag::bottom, tag::right, tag::top, tag::left})
        s.bcs[t] = {BCType::Periodic, nullptr, 0.0, false};
    s.f = init_fields(s.pm, s.dm, s.par, ic);
    return s;
}

double total(const std::vector<double>& v, const DualMesh& d) {
    double s = 0.0;
    for (int c = 0; c < d.n_cells; ++c) s += d.area[c] * v[c];
    return s;
}

} // namespace

TEST_CASE("uniform moving state is an exact fixed point of the transport stage") {
    for (bool lader : {false, true}) {
        auto s = periodic_box(8, [](Vec2) {
            return Primitive{1.3, {0.7, -0.4}, 2.0};
        });
        TransportOptions opt;
        opt.lader = lader;
        opt.c_alpha = 1.0;
        TransportResult out;
        transport_stage(s.f, s.pm, s.dm, s.par, s.bcs, 0.01, 0.0, opt, out);
        for (int c = 0; c < s.dm.n_cells; ++c) {
            CHECK(out.rho[c] == doctest::Approx(s.f.rho[c]).epsilon(1e-12));
            CHECK(out.mom_x[c] == doctest::Approx(s.f.mom_x[c]).epsilon(1e-12));
            CHECK(out.mom_y[c] == doctest::Approx(s.f.mom_y[c]).epsilon(1e-12));
            CHECK(out.E[c] == doctest::Approx(s.f.E[c]).epsilon(1e-12));
        }
    }
}

TEST_CASE("periodic transport conserves mass exactly and momentum when P is uniform") {
    auto ic = [](Vec2 x) {
        return Primitive{1.0 + 0.3 * std::sin(x.x) * std::cos(x.y),
                         {0.5 + 0.2 * std::cos(x.x), -0.1 * std::sin(x.y)}, 2.0};
    };
    for (bool lader : {false, true}) {
        auto s = periodic_box(12, ic);
        // flatten the vertex pressure so the pressure force integrates to zero
        std::fill(s.f.P.begin(), s.f.P.end(), 2.0);
        TransportOptions opt;
        opt.lader = lader;
        opt.c_alpha = 0.5;
        TransportResult out;
        transport_stage(s.f, s.pm, s.dm, s.par, s.bcs, 0.02, 0.0, opt, out);

        CHECK(total(out.rho, s.dm) ==
              doctest::Approx(total(s.f.rho, s.dm)).epsilon(1e-12));
        CHECK(total(out.mom_x, s.dm) ==
              doctest::Approx(total(s.f.mom_x, s.dm)).epsilon(1e-11));
        CHECK(total(out.mom_y, s.dm) == doctest::Approx(total(s.f.mom_y, s.dm)).epsilon(1e-11));
    }
}

TEST_CASE("first-order density update matches an independent scalar implementation") {
    auto ic = [](Vec2 x) {
        return Primitive{1.0 + 0.25 * std::cos(x.x), {0.8, 0.3 * std::sin(x.y)}, 1.5};
    };
    auto s = periodic_box(6, ic);
    const double dt = 0.015, c_alpha = 0.7;
    TransportOptions opt;
    opt.c_alpha = c_alpha;
    TransportResult out;
    transport_stage(s.f, s.pm, s.dm, s.par, s.bcs, dt, 0.0, opt, out);

    // plain scalar re-implementation of the first-order mass update
    for (int c = 0; c < s.dm.n_cells; ++c) {
        double sum = 0.0;
        for (auto [fid, sign] : s.dm.cell_faces[c]) {
            const DualFace& F = s.dm.faces[fid];
            double rho_i = s.f.rho[F.i], rho_j = s.f.rho[F.j];
            Vec2 mi{s.f.mom_x[F.i], s.f.mom_y[F.i]}, mj{s.f.mom_x[F.j], s.f.mom_y[F.j]};
            double alpha = std::max(std::abs(mi.dot(F.normal)) / rho_i,
                                    std::abs(mj.dot(F.normal)) / rho_j) +
                           c_alpha * F.normal.norm();
            double phi = 0.5 * (mi + mj).dot(F.normal) - 0.5 * alpha * (rho_j - rho_i);
            sum += sign * phi;
        }
        double expect = s.f.rho[c] - dt / s.dm.area[c] * sum;
        CHECK(out.rho[c] == doctest::Approx(expect).epsilon(1e-14));
    }
}

TEST_CASE("half-time evolution leaves uniform states untouched") {
    auto s = periodic_box(6, [](Vec2) {
        return Primitive{2.0, {1.1, 0.6}, 3.0};
    });
    TransportOptions opt;
    opt.lader = true;
    for (int fid : {0, 5, 17}) {
        auto [wa, wb] = lader_face_states(fid, s.f, s.pm, s.dm, s.par, s.bcs, 0.05, 0.0, opt);
        CHECK(wa.rho == doctest::Approx(2.0).epsilon(1e-14));
        CHECK(wa.mom.x == doctest::Approx(2.2).epsilon(1e-14));
        CHECK(wb.E == doctest::Approx(s.f.E[0]).epsilon(1e-14));
    }
}

TEST_CASE("gravity corrector: momentum gains (dt/2) g at rest") {
    const double dt = 0.08;
    auto s = periodic_box(6, [](Vec2) {
        return Primitive{1.0, {0.0, 0.0}, 1.0};
    });
    s.par.gravity = {0.3, -9.81};
    TransportOptions opt;
    opt.lader = true;
    auto [wa, wb] = lader_face_states(3, s.f, s.pm, s.dm, s.par, s.bcs, dt, 0.0, opt);
    CHECK(wa.mom.x == doctest::Approx(0.5 * dt * 0.3).epsilon(1e-13));
    CHECK(wa.mom.y == doctest::Approx(0.5 * dt * -9.81).epsilon(1e-13));
    CHECK(wb.mom.x == doctest::Approx(wa.mom.x).epsilon(1e-14));
}

TEST_CASE("half-time evolution preserves velocity and pressure across a contact") {
    const double u0 = 0.9, p0 = 1.7;
    auto ic = [&](Vec2 x) {
        return Primitive{x.x <= M_PI ? 1.0 : 0.125, {u0, 0.0}, p0};
    };
    auto s = periodic_box(8, ic);
    TransportOptions opt;
    opt.lader = true;
    opt.limiter = LimiterChoice::ENO;
    for (int fid = 0; fid < static_cast<int>(s.dm.faces.size()); ++fid) {
        auto [wa, wb] = lader_face_states(fid, s.f, s.pm, s.dm, s.par, s.bcs, 0.02, 0.0, opt);
        Primitive qa = cons_to_prim(wa, s.par), qb = cons_to_prim(wb, s.par);
        CHECK(qa.vel.x == doctest::Approx(u0).epsilon(1e-12));
        CHECK(qa.vel.y == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
        CHECK(qa.p == doctest::Approx(p0).epsilon(1e-12));
        CHECK(qb.p == doctest::Approx(p0).epsilon(1e-12));
        CHECK(qb.vel.x == doctest::Approx(u0).epsilon(1e-12));
    }
}

TEST_CASE("cell pressure integral: exact for linear vertex fields") {
    auto m = PrimalMesh::structured(9, 6, {0.0, 0.0}, {2.0, 1.5});
    auto d = DualMesh::build(m);

    std::vector<double> p1(d.n_dofs, 3.7);
    for (int c = 0; c < d.n_cells; ++c)
        CHECK(pressure_gradient_term(c, p1, m, d).norm() <= 1e-12);

    std::vector<double> px(d.n_dofs), pxy(d.n_dofs);
    for (int v = 0; v < m.n_vertices(); ++v) {
        px[d.vertex_dof[v]] = m.vertices[v].x;
        pxy[d.vertex_dof[v]] = m.vertices[v].x + m.vertices[v].y;
    }
    for (int c = 0; c < d.n_cells; ++c) {
        Vec2 gx = pressure_gradient_term(c, px, m, d);
        CHECK(gx.x == doctest::Approx(d.area[c]).epsilon(1e-12));
        CHECK(std::abs(gx.y) <= 1e-13);
        Vec2 gxy = pressure_gradient_term(c, pxy, m, d);
        CHECK(gxy.x == doctest::Approx(d.area[c]).epsilon(1e-12));
        CHECK(gxy.y == doctest::Approx(d.area[c]).epsilon(1e-12));
    }
}

TEST_CASE("heat flux term") {
    auto m = PrimalMesh::structured(10, 10, {0.0, 0.0}, {1.0, 1.0});
    auto d = DualMesh::build(m);

    SUBCASE("uniform temperature and zero conductivity give zero") {
        std::vector<double> theta(d.n_cells, 5.0);
        auto g = galerkin_gradients(theta, m, d);
        for (int c = 0; c < d.n_cells; ++c) {
            CHECK(heat_flux_term(c, g, 0.8, d) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
            CHECK(heat_flux_term(c, g, 0.0, d) == 0.0);
        }
    }

    SUBCASE("linear temperature has divergence-free flux on interior cells") {
        std::vector<double> theta(d.n_cells);
        for (int c = 0; c < d.n_cells; ++c) theta[c] = d.node[c].x;
        auto g = galerkin_gradients(theta, m, d);
        for (int c = 0; c < d.n_cells; ++c)
            if (!d.is_boundary[c])
                CHECK(heat_flux_term(c, g, 1.0, d) ==
                      doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    }

    SUBCASE("quadratic temperature approaches the exact divergence integral") {
        const double lambda = 0.6;
        std::vector<double> theta(d.n_cells);
        for (int c = 0; c < d.n_cells; ++c) theta[c] = d.node[c].x * d.node[c].x;
        auto g = galerkin_gradients(theta, m, d);
        // div(-lambda grad x^2) = -2 lambda; the integral over C_i is -2 lambda |C_i|
        for (int c = 0; c < d.n_cells; ++c) {
            if (d.is_boundary[c]) continue;
            double q = heat_flux_term(c, g, lambda, d);
            CHECK(q == doctest::Approx(-2.0 * lambda * d.area[c]).epsilon(0.25));
        }
    }
}

TEST_CASE("strong Dirichlet cells carry the exact boundary state after the stage") {
    auto pm = PrimalMesh::structured(16, 4, {-0.5, 0.0}, {0.5, 0.25});
    auto dm = DualMesh::build(pm, false, true);
    FluidParams par;
    Primitive L{1.0, {0.0, 0.0}, 1.0}, R{0.125, {0.0, 0.0}, 0.1};
    auto ic = [&](Vec2 x) { return x.x <= 0.0 ? L : R; };
    BoundaryTable bcs;
    bcs[tag::left] = {BCType::StrongDirichlet, [&](Vec2 x, double) { return ic(x); }, 0.0, false};
    bcs[tag::right] = {BCType::StrongDirichlet, [&](Vec2 x, double) { return ic(x); }, 0.0, false};
    bcs[tag::bottom] = {BCType::Periodic, nullptr, 0.0, false};
    bcs[tag::top] = {BCType::Periodic, nullptr, 0.0, false};
    FieldSet f = init_fields(pm, dm, par, ic);

    TransportOptions opt;
    opt.c_alpha = 1.0;
    TransportResult out;
    transport_stage(f, pm, dm, par, bcs, 1e-3, 0.0, opt, out);
    for (const auto& bf : dm.bfaces) {
        if (bcs.at(bf.tag).type != BCType::StrongDirichlet) continue;
        Conserved w = prim_to_cons(ic(dm.node[bf.cell]), par);
        CHECK(out.rho[bf.cell] == doctest::Approx(w.rho).epsilon(1e-14));
        CHECK(out.E[bf.cell] == doctest::Approx(w.E).epsilon(1e-14));
    }
}
