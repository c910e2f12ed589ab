#include "allmach/transport.hpp"

#include <algorithm>
#include <cmath>

namespace allmach {

namespace {

struct FaceOut {
    NormalFlux conv;
    Vec2 visc{0.0, 0.0};
    double visc_E = 0.0;
    double heat = 0.0;
    double p_face = 0.0;
    double overshoot = 0.0;
};

// All per-step context needed to evaluate one face. Face evaluation is pure,
// so the parallel face sweep and the serial per-cell recomputation produce
// bit-identical results.
struct Kernel {
    const FieldSet& f;
    const PrimalMesh& pm;
    const DualMesh& dm;
    const FluidParams& par;
    const BoundaryTable& bcs;
    const TransportOptions& opt;
    double dt, time;

    Kernel(const FieldSet& f_, const PrimalMesh& pm_, const DualMesh& dm_,
           const FluidParams& par_, const BoundaryTable& bcs_, const TransportOptions& opt_,
           double dt_, double time_)
        : f(f_), pm(pm_), dm(dm_), par(par_), bcs(bcs_), opt(opt_), dt(dt_), time(time_) {}

    bool need_visc = false, need_heat = false;

    std::vector<double> ux, uy;   // cell velocities
    std::vector<double> p_cell;   // cell pressures (primitive reconstruction)
    GradientField grad_c[4];      // reconstruction components
    GradientField grad_ux, grad_uy, grad_theta;
    std::vector<Vec2> grad_p;     // per-triangle P1 pressure gradient

    void prepare() {
        need_visc = par.mu > 0.0;
        need_heat = par.lambda > 0.0;
        const int nc = dm.n_cells;
        const int ne = pm.n_edges();

        if (need_visc || opt.lader) {
            ux.resize(nc);
            uy.resize(nc);
#pragma omp parallel for schedule(static)
            for (int c = 0; c < nc; ++c) {
                ux[c] = f.mom_x[c] / f.rho[c];
                uy[c] = f.mom_y[c] / f.rho[c];
            }
        }

        DofOverride ov_ux, ov_uy, ov_mx, ov_my;
        bool have_ov = false;
        for (const auto& bf : dm.bfaces) {
            auto it = bcs.find(bf.tag);
            if (it == bcs.end()) continue;
            const auto& bc = it->second;
            if (bc.type != BCType::WeakDirichlet && bc.type != BCType::InviscidWall) continue;
            if (!have_ov) {
                ov_ux.resize(ne);
                ov_uy.resize(ne);
                ov_mx.resize(ne);
                ov_my.resize(ne);
                have_ov = true;
            }
            Vec2 u_ex;
            if (bc.type == BCType::WeakDirichlet) {
                u_ex = bc.state(bf.center, time).vel;
            } else {
                Vec2 n = bf.normal / bf.normal.norm();
                Vec2 u{f.mom_x[bf.cell] / f.rho[bf.cell], f.mom_y[bf.cell] / f.rho[bf.cell]};
                u_ex = u - n * u.dot(n);
            }
            ov_ux.set(bf.edge, u_ex.x);
            ov_uy.set(bf.edge, u_ex.y);
            ov_mx.set(bf.edge, f.rho[bf.cell] * u_ex.x);
            ov_my.set(bf.edge, f.rho[bf.cell] * u_ex.y);
        }

        if (need_visc) {
            galerkin_gradients(ux, pm, dm, have_ov ? &ov_ux : nullptr, grad_ux);
            galerkin_gradients(uy, pm, dm, have_ov ? &ov_uy : nullptr, grad_uy);
        }
        if (need_heat) galerkin_gradients(f.theta, pm, dm, nullptr, grad_theta);

        if (opt.lader) {
            if (opt.primitive_recon) {
                p_cell.resize(nc);
#pragma omp parallel for schedule(static)
                for (int c = 0; c < nc; ++c) p_cell[c] = pressure_of(f.cell(c), par);
                galerkin_gradients(f.rho, pm, dm, nullptr, grad_c[0]);
                galerkin_gradients(ux, pm, dm, have_ov ? &ov_ux : nullptr, grad_c[1]);
                galerkin_gradients(uy, pm, dm, have_ov ? &ov_uy : nullptr, grad_c[2]);
                galerkin_gradients(p_cell, pm, dm, nullptr, grad_c[3]);
            } else {
                galerkin_gradients(f.rho, pm, dm, nullptr, grad_c[0]);
                galerkin_gradients(f.mom_x, pm, dm, have_ov ? &ov_mx : nullptr, grad_c[1]);
                galerkin_gradients(f.mom_y, pm, dm, have_ov ? &ov_my : nullptr, grad_c[2]);
                galerkin_gradients(f.E, pm, dm, nullptr, grad_c[3]);
            }
            const int nt = pm.n_tris();
            grad_p.resize(nt);
#pragma omp parallel for schedule(static)
            for (int t = 0; t < nt; ++t) grad_p[t] = p1_gradient(f.P, pm, dm, t);
        }
    }

    double comp_value(int comp, int c) const {
        if (opt.primitive_recon) {
            switch (comp) {
                case 0: return f.rho[c];
                case 1: return ux[c];
                case 2: return uy[c];
                default: return p_cell[c];
            }
        }
        switch (comp) {
            case 0: return f.rho[c];
            case 1: return f.mom_x[c];
            case 2: return f.mom_y[c];
            default: return f.E[c];
        }
    }

    double face_pressure_first_order(const DualFace& F) const {
        // face value: mean of the endpoint pressures; the barycenter endpoint
        // uses the mean over the triangle's vertices
        const auto& tri = pm.tris[F.tri];
        double pb = (f.P[dm.vertex_dof[tri[0]]] + f.P[dm.vertex_dof[tri[1]]] +
                     f.P[dm.vertex_dof[tri[2]]]) / 3.0;
        // the face joins one primal vertex to the barycenter; recover the vertex
        // as the endpoint shared by the two primal edges
        int shared = -1;
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                if (pm.edges[F.edge_i][a] == pm.edges[F.edge_j][b]) shared = pm.edges[F.edge_i][a];
        return 0.5 * (f.P[dm.vertex_dof[shared]] + pb);
    }

    // Evolved (or plain) states on both sides of an interior face, plus the
    // momentum-gradient tensors used by the viscous corrector.
    struct FaceStates {
        Conserved a, b;
        double overshoot = 0.0;
        bool reconstructed = false;
    };

    FaceStates face_states(const DualFace& F) const {
        FaceStates s;
        s.a = f.cell(F.i);
        s.b = f.cell(F.j);
        if (!opt.lader) return s;

        const Vec2 di = F.center - F.xi;
        const Vec2 dj = F.center - F.xj;
        const int tL = dm.upwind_tri(F.edge_i, F.tri);
        const int tR = dm.upwind_tri(F.edge_j, F.tri);

        Vec2 gi[4], gj[4];
        double vi[4], vj[4], fi[4], fj[4];
        for (int c = 0; c < 4; ++c) {
            vi[c] = comp_value(c, F.i);
            vj[c] = comp_value(c, F.j);
            gi[c] = select_gradient(opt.limiter, grad_c[c][F.tri], grad_c[c][tL], di, vi[c], vj[c]);
            gj[c] = select_gradient(opt.limiter, grad_c[c][F.tri], grad_c[c][tR], dj, vj[c], vi[c]);
            fi[c] = vi[c] + gi[c].dot(di);
            fj[c] = vj[c] + gj[c].dot(dj);
        }

        Conserved wa, wb;
        if (opt.primitive_recon) {
            if (fi[0] <= 0.0 || fj[0] <= 0.0 || fi[3] <= 0.0 || fj[3] <= 0.0) return s;
            wa = prim_to_cons({fi[0], {fi[1], fi[2]}, fi[3]}, par);
            wb = prim_to_cons({fj[0], {fj[1], fj[2]}, fj[3]}, par);
        } else {
            if (fi[0] <= 0.0 || fj[0] <= 0.0) return s;
            wa = {fi[0], {fi[1], fi[2]}, fi[3]};
            wb = {fj[0], {fj[1], fj[2]}, fj[3]};
        }

        if (opt.monitor_reconstruction) {
            double lo = std::min(s.a.rho, s.b.rho), hi = std::max(s.a.rho, s.b.rho);
            s.overshoot = std::max({0.0, lo - wa.rho, wa.rho - hi, lo - wb.rho, wb.rho - hi});
        }

        // half-time corrector, shared by both sides
        const Vec2 unit = F.normal / F.normal.norm();
        const double L = 2.0 * (pm.area[F.tri] / 3.0) / F.normal.norm();
        NormalFlux dF = normal_flux(wb, unit) - normal_flux(wa, unit);
        double s_rho = -dt / (2.0 * L) * dF.mass;
        Vec2 s_mom = dF.mom * (-dt / (2.0 * L));
        double s_E = -dt / (2.0 * L) * dF.energy;

        if (need_visc) {
            Mat2 Gi, Gj;  // momentum gradients of the two sides
            Vec2 ua = wa.mom / wa.rho, ub = wb.mom / wb.rho;
            if (opt.primitive_recon) {
                Gi = Mat2{gi[1].x, gi[1].y, gi[2].x, gi[2].y} * fi[0] + Mat2::outer(ua, gi[0]);
                Gj = Mat2{gj[1].x, gj[1].y, gj[2].x, gj[2].y} * fj[0] + Mat2::outer(ub, gj[0]);
            } else {
                Gi = {gi[1].x, gi[1].y, gi[2].x, gi[2].y};
                Gj = {gj[1].x, gj[1].y, gj[2].x, gj[2].y};
            }
            Mat2 Si = Gi + Gi.transpose(), Sj = Gj + Gj.transpose();
            double divi = Gi.trace(), divj = Gj.trace();
            Mat2 Tstar = (Si + Sj) * par.mu;
            double dd = (2.0 / 3.0) * par.mu * (divi + divj);
            Tstar.a11 -= dd;
            Tstar.a22 -= dd;
            s_mom += (Tstar * unit) * (dt / (2.0 * L));
            Vec2 TU = (Si * ua + Sj * ub) * par.mu -
                      (ua * divi + ub * divj) * ((2.0 / 3.0) * par.mu);
            s_E += dt / (2.0 * L) * TU.dot(unit);
        }

        s_mom += grad_p[F.tri] * (-0.5 * dt) + par.gravity * (0.25 * dt * (wa.rho + wb.rho));
        s_E += 0.25 * dt * par.gravity.dot(wa.mom + wb.mom);

        wa.rho += s_rho;
        wb.rho += s_rho;
        wa.mom += s_mom;
        wb.mom += s_mom;
        wa.E += s_E;
        wb.E += s_E;
        if (wa.rho <= 0.0 || wb.rho <= 0.0) return s;  // keep first-order states
        s.a = wa;
        s.b = wb;
        s.reconstructed = true;
        return s;
    }

    FaceOut face(int fid) const {
        const DualFace& F = dm.faces[fid];
        FaceOut o;
        FaceStates s = face_states(F);
        o.overshoot = s.overshoot;
        o.conv = rusanov_face_flux(s.a, s.b, F.normal, opt.c_alpha);

        if (opt.lader && s.reconstructed) {
            o.p_face = 0.5 * (pressure_of(s.a, par) + pressure_of(s.b, par));
        } else {
            o.p_face = face_pressure_first_order(F);
        }
        if (need_visc) {
            Mat2 G{grad_ux[F.tri].x, grad_ux[F.tri].y, grad_uy[F.tri].x, grad_uy[F.tri].y};
            Vec2 u_face = (s.a.mom / s.a.rho + s.b.mom / s.b.rho) * 0.5;
            ViscousFlux v = viscous_face_flux(G, u_face, F.normal, par.mu);
            o.visc = v.mom;
            o.visc_E = v.energy;
        }
        if (need_heat) o.heat = -par.lambda * grad_theta[F.tri].dot(F.normal);
        return o;
    }

    FaceOut bface(int bid) const {
        const BoundaryFace& B = dm.bfaces[bid];
        FaceOut o;
        auto it = bcs.find(B.tag);
        if (it == bcs.end())
            throw SolverError("no boundary condition for tag " + std::to_string(B.tag));
        const auto& bc = it->second;

        // pressure integral closes the cell with the vertex-averaged value
        o.p_face = 0.5 * (f.P[dm.vertex_dof[pm.edges[B.edge][0]]] +
                          f.P[dm.vertex_dof[pm.edges[B.edge][1]]]);

        if (bc.type == BCType::StrongDirichlet) return o;  // cell is overwritten

        const Conserved wi = f.cell(B.cell);
        Conserved wg = wi;
        Vec2 u_face{wi.mom.x / wi.rho, wi.mom.y / wi.rho};
        if (bc.type == BCType::WeakDirichlet) {
            Vec2 u_ex = bc.state(B.center, time).vel;
            wg.mom = wi.rho * u_ex * 2.0 - wi.mom;
            wg.E = wi.E - 0.5 * wi.mom.norm2() / wi.rho + 0.5 * wg.mom.norm2() / wi.rho;
            u_face = u_ex;
        } else if (bc.type == BCType::InviscidWall) {
            Vec2 n = B.normal / B.normal.norm();
            wg.mom = wi.mom - n * (2.0 * wi.mom.dot(n));
        }
        o.conv = rusanov_face_flux(wi, wg, B.normal, opt.c_alpha);

        if (need_visc && bc.type != BCType::InviscidWall) {
            Mat2 G{grad_ux[B.tri].x, grad_ux[B.tri].y, grad_uy[B.tri].x, grad_uy[B.tri].y};
            ViscousFlux v = viscous_face_flux(G, u_face, B.normal, par.mu);
            o.visc = v.mom;
            o.visc_E = v.energy;
        }
        // adiabatic boundaries: no heat flux
        return o;
    }
};

} // namespace

Vec2 pressure_gradient_term(int cell, const std::vector<double>& p_dof, const PrimalMesh& pm,
                            const DualMesh& dm) {
    Vec2 sum{0.0, 0.0};
    for (auto [fid, sign] : dm.cell_faces[cell]) {
        const DualFace& F = dm.faces[fid];
        const auto& tri = pm.tris[F.tri];
        double pb = (p_dof[dm.vertex_dof[tri[0]]] + p_dof[dm.vertex_dof[tri[1]]] +
                     p_dof[dm.vertex_dof[tri[2]]]) / 3.0;
        int shared = -1;
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                if (pm.edges[F.edge_i][a] == pm.edges[F.edge_j][b]) shared = pm.edges[F.edge_i][a];
        double p_face = 0.5 * (p_dof[dm.vertex_dof[shared]] + pb);
        sum += F.normal * (sign * p_face);
    }
    for (int bid : dm.cell_bfaces[cell]) {
        const BoundaryFace& B = dm.bfaces[bid];
        double p_face = 0.5 * (p_dof[dm.vertex_dof[pm.edges[B.edge][0]]] +
                               p_dof[dm.vertex_dof[pm.edges[B.edge][1]]]);
        sum += B.normal * p_face;
    }
    return sum;
}

double heat_flux_term(int cell, const GradientField& grad_theta, double lambda,
                      const DualMesh& dm) {
    double sum = 0.0;
    for (auto [fid, sign] : dm.cell_faces[cell])
        sum += sign * (-lambda) * grad_theta[dm.faces[fid].tri].dot(dm.faces[fid].normal);
    return sum;
}

void transport_stage(const FieldSet& f, const PrimalMesh& pm, const DualMesh& dm,
                     const FluidParams& par, const BoundaryTable& bcs, double dt, double time,
                     const TransportOptions& opt, TransportResult& out) {
    Kernel k{f, pm, dm, par, bcs, opt, dt, time};
    k.prepare();

    const int nc = dm.n_cells;
    out.rho.resize(nc);
    out.mom_x.resize(nc);
    out.mom_y.resize(nc);
    out.E.resize(nc);
    out.recon_overshoot = 0.0;

    std::vector<FaceOut> fo;
    std::vector<FaceOut> bo;
    double overshoot = 0.0;
    if (!opt.serial) {
        fo.resize(dm.faces.size());
        bo.resize(dm.bfaces.size());
        const int nf = static_cast<int>(dm.faces.size());
        const int nb = static_cast<int>(dm.bfaces.size());
#pragma omp parallel for schedule(static) reduction(max : overshoot)
        for (int i = 0; i < nf; ++i) {
            fo[i] = k.face(i);
            overshoot = std::max(overshoot, fo[i].overshoot);
        }
#pragma omp parallel for schedule(static)
        for (int i = 0; i < nb; ++i) bo[i] = k.bface(i);
    }

    // cells with a strong Dirichlet boundary face take the exact state
    std::vector<char> strong(nc, 0);
    for (const auto& B : dm.bfaces) {
        auto it = bcs.find(B.tag);
        if (it != bcs.end() && it->second.type == BCType::StrongDirichlet) strong[B.cell] = 1;
    }

#pragma omp parallel for schedule(static) reduction(max : overshoot)
    for (int c = 0; c < nc; ++c) {
        if (strong[c]) {
            const auto& bc = bcs.at(dm.bfaces[dm.cell_bfaces[c][0]].tag);
            Conserved w = prim_to_cons(bc.state(dm.node[c], time + dt), par);
            out.rho[c] = w.rho;
            out.mom_x[c] = w.mom.x;
            out.mom_y[c] = w.mom.y;
            out.E[c] = w.E;
            continue;
        }
        NormalFlux conv;
        Vec2 visc{0.0, 0.0}, pint{0.0, 0.0};
        double visc_E = 0.0, heat = 0.0;
        for (auto [fid, sign] : dm.cell_faces[c]) {
            FaceOut o = opt.serial ? k.face(fid) : fo[fid];
            if (opt.serial) overshoot = std::max(overshoot, o.overshoot);
            double s = sign;
            conv = conv + o.conv * s;
            visc += o.visc * s;
            visc_E += s * o.visc_E;
            heat += s * o.heat;
            pint += dm.faces[fid].normal * (s * o.p_face);
        }
        for (int bid : dm.cell_bfaces[c]) {
            FaceOut o = opt.serial ? k.bface(bid) : bo[bid];
            conv = conv + o.conv;
            visc += o.visc;
            visc_E += o.visc_E;
            heat += o.heat;
            pint += dm.bfaces[bid].normal * o.p_face;
        }
        const double inv = dt / dm.area[c];
        const Vec2 mom{f.mom_x[c], f.mom_y[c]};
        out.rho[c] = f.rho[c] - inv * conv.mass;
        Vec2 m_new = mom - (conv.mom + pint - visc - dm.area[c] * f.rho[c] * par.gravity) * inv;
        out.mom_x[c] = m_new.x;
        out.mom_y[c] = m_new.y;
        out.E[c] = f.E[c] - inv * (conv.energy - visc_E + heat - dm.area[c] * par.gravity.dot(mom));
    }
    out.recon_overshoot = overshoot;

    for (int c = 0; c < nc; ++c) {
        if (!(out.rho[c] > 0.0) || !std::isfinite(out.rho[c]))
            throw SolverError("transport stage produced non-positive density " +
                                  std::to_string(out.rho[c]), c, time);
    }
}

std::pair<Conserved, Conserved> lader_face_states(int fid, const FieldSet& f,
                                                  const PrimalMesh& pm, const DualMesh& dm,
                                                  const FluidParams& par, const BoundaryTable& bcs,
                                                  double dt, double time,
                                                  const TransportOptions& opt) {
    Kernel k{f, pm, dm, par, bcs, opt, dt, time};
    k.prepare();
    auto s = k.face_states(dm.faces[fid]);
    return {s.a, s.b};
}

} // namespace allmach
