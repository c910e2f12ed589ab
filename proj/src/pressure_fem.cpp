#include "allmach/pressure_fem.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace allmach {

namespace {

constexpr int kDotBlocks = 256;

// Fixed-block reduction: identical result for any number of threads.
double dot_det(const std::vector<double>& a, const std::vector<double>& b) {
    const int n = static_cast<int>(a.size());
    double partial[kDotBlocks] = {0.0};
    const int chunk = (n + kDotBlocks - 1) / kDotBlocks;
#pragma omp parallel for schedule(static)
    for (int blk = 0; blk < kDotBlocks; ++blk) {
        double s = 0.0;
        const int lo = blk * chunk, hi = std::min(n, lo + chunk);
        for (int i = lo; i < hi; ++i) s += a[i] * b[i];
        partial[blk] = s;
    }
    double sum = 0.0;
    for (double p : partial) sum += p;
    return sum;
}

} // namespace

void SparseMatrix::apply(const std::vector<double>& x, std::vector<double>& y) const {
    y.resize(n);
#pragma omp parallel for schedule(static)
    for (int r = 0; r < n; ++r) {
        double s = 0.0;
        for (int k = row_ptr[r]; k < row_ptr[r + 1]; ++k) s += val[k] * x[col[k]];
        y[r] = s;
    }
}

double SparseMatrix::coeff(int r, int c) const {
    for (int k = row_ptr[r]; k < row_ptr[r + 1]; ++k)
        if (col[k] == c) return val[k];
    return 0.0;
}

CGResult solve_spd(const PressureSystem& sys, std::vector<double>& x, double tol, int max_iter) {
    const int n = sys.A.n;
    if (max_iter < 0) max_iter = 10 * n;
    x.resize(n, 0.0);

    const double bnorm = std::sqrt(dot_det(sys.b, sys.b));
    if (bnorm == 0.0) {
        std::fill(x.begin(), x.end(), 0.0);
        return {0, 0.0};
    }

    std::vector<double> r(n), p(n), q(n);
    sys.A.apply(x, q);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) r[i] = sys.b[i] - q[i];
    p = r;

    double rr = dot_det(r, r);
    CGResult res;
    while (std::sqrt(rr) > tol * bnorm) {
        if (res.iters >= max_iter)
            throw SolverError("conjugate gradient failed to converge: residual " +
                              std::to_string(std::sqrt(rr) / bnorm) + " after " +
                              std::to_string(res.iters) + " iterations");
        sys.A.apply(p, q);
        double curv = dot_det(p, q);
        if (!(curv > 0.0))
            throw SolverError("pressure system is not positive definite (curvature " +
                              std::to_string(curv) + ")");
        double alpha = rr / curv;
#pragma omp parallel for schedule(static)
        for (int i = 0; i < n; ++i) {
            x[i] += alpha * p[i];
            r[i] -= alpha * q[i];
        }
        double rr_new = dot_det(r, r);
        double beta = rr_new / rr;
        rr = rr_new;
#pragma omp parallel for schedule(static)
        for (int i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
        ++res.iters;
    }
    res.rel_residual = std::sqrt(rr) / bnorm;

    if (sys.zero_mean && sys.weights) {
        double wsum = 0.0, xsum = 0.0;
        for (int i = 0; i < n; ++i) {
            wsum += (*sys.weights)[i];
            xsum += (*sys.weights)[i] * x[i];
        }
        double mean = xsum / wsum;
        for (int i = 0; i < n; ++i) x[i] -= mean;
    }
    return res;
}

std::vector<double> dual_to_primal(const std::vector<double>& cell_vals, const PrimalMesh& pm,
                                   const DualMesh& dm) {
    std::vector<double> out(pm.n_tris());
#pragma omp parallel for schedule(static)
    for (int t = 0; t < pm.n_tris(); ++t) {
        double s = 0.0;
        for (int k = 0; k < 3; ++k) s += cell_vals[dm.edge_cell[pm.tri_edges[t][k]]];
        out[t] = s / 3.0;
    }
    return out;
}

PressureSolver::PressureSolver(const PrimalMesh& pm, const DualMesh& dm) : pm_(pm), dm_(dm) {
    const int nd = dm.n_dofs;

    std::vector<std::set<int>> adj(nd);
    dof_tris_.assign(nd, {});
    for (int t = 0; t < pm.n_tris(); ++t) {
        int d[3];
        for (int k = 0; k < 3; ++k) d[k] = dm.vertex_dof[pm.tris[t][k]];
        for (int a = 0; a < 3; ++a) {
            dof_tris_[d[a]].push_back({t, a});
            for (int b = 0; b < 3; ++b) adj[d[a]].insert(d[b]);
        }
    }
    pattern_.n = nd;
    pattern_.row_ptr.assign(nd + 1, 0);
    for (int r = 0; r < nd; ++r) pattern_.row_ptr[r + 1] = pattern_.row_ptr[r] + adj[r].size();
    pattern_.col.reserve(pattern_.row_ptr[nd]);
    for (int r = 0; r < nd; ++r)
        for (int c : adj[r]) pattern_.col.push_back(c);
    pattern_.val.assign(pattern_.col.size(), 0.0);

    dof_bedges_.assign(nd, {});
    for (int e = 0; e < pm.n_edges(); ++e) {
        if (pm.edge_tris[e][1] != -1) continue;
        for (int s = 0; s < 2; ++s) dof_bedges_[dm.vertex_dof[pm.edges[e][s]]].push_back(e);
    }

    grad_phi_.resize(3 * pm.n_tris());
    for (int t = 0; t < pm.n_tris(); ++t) {
        const auto& tri = pm.tris[t];
        const double inv2A = 1.0 / (2.0 * pm.area[t]);
        for (int k = 0; k < 3; ++k)
            grad_phi_[3 * t + k] =
                Vec2{pm.vertices[tri[(k + 1) % 3]].y - pm.vertices[tri[(k + 2) % 3]].y,
                     pm.vertices[tri[(k + 2) % 3]].x - pm.vertices[tri[(k + 1) % 3]].x} *
                inv2A;
    }
}

PressureSystem PressureSolver::assemble(const std::vector<double>& H_tri,
                                        const std::vector<double>& rhoK_tri,
                                        const std::vector<double>& We_tri,
                                        const std::vector<Vec2>& Wu_tri,
                                        const std::vector<double>& Pn,
                                        const std::vector<double>& H_cell,
                                        const FluidParams& par, const BoundaryTable& bcs,
                                        double dt, double time, bool zero_mean) const {
    for (int t = 0; t < pm_.n_tris(); ++t)
        if (!(H_tri[t] > 0.0))
            throw SolverError("non-positive enthalpy " + std::to_string(H_tri[t]) +
                              " on triangle " + std::to_string(t));

    PressureSystem sys;
    sys.A = pattern_;
    sys.b.assign(dm_.n_dofs, 0.0);
    sys.zero_mean = zero_mean;
    sys.weights = &dm_.dof_area;
    sys.dirichlet.assign(dm_.n_dofs, 0);
    const double ig = 1.0 / (par.gamma - 1.0);

    std::vector<double> dir_val(dm_.n_dofs, 0.0);
    for (const auto& bf : dm_.bfaces) {
        auto it = bcs.find(bf.tag);
        if (it == bcs.end() || !it->second.has_pressure) continue;
        for (int s = 0; s < 2; ++s) {
            int d = dm_.vertex_dof[pm_.edges[bf.edge][s]];
            sys.dirichlet[d] = 1;
            dir_val[d] = it->second.pressure - Pn[d];  // correction achieving P^{n+1} = value
        }
    }

#pragma omp parallel for schedule(static)
    for (int r = 0; r < dm_.n_dofs; ++r) {
        double brow = 0.0;
        for (auto [t, la] : dof_tris_[r]) {
            const auto& tri = pm_.tris[t];
            const double A = pm_.area[t];
            const Vec2 ga = grad_phi_[3 * t + la];
            // volume sources: (We - rhoK) z - P^n z / (gamma-1)
            brow += (We_tri[t] - rhoK_tri[t]) * A / 3.0;
            for (int lb = 0; lb < 3; ++lb) {
                double mass = A / 12.0 * (la == lb ? 2.0 : 1.0);
                brow -= ig * mass * Pn[dm_.vertex_dof[tri[lb]]];
            }
            // momentum term dt * H W~~ . grad z
            brow += dt * H_tri[t] * Wu_tri[t].dot(ga) * A;
            // matrix row: mass/(gamma-1) + dt^2 H grad.grad
            for (int lb = 0; lb < 3; ++lb) {
                int cdof = dm_.vertex_dof[tri[lb]];
                double av = ig * A / 12.0 * (la == lb ? 2.0 : 1.0) +
                            dt * dt * H_tri[t] * ga.dot(grad_phi_[3 * t + lb]) * A;
                for (int k = sys.A.row_ptr[r]; k < sys.A.row_ptr[r + 1]; ++k)
                    if (sys.A.col[k] == cdof) {
                        sys.A.val[k] += av;
                        break;
                    }
            }
        }
        // boundary term: -dt H W_u^{n+1} . n z on prescribed-momentum boundaries
        for (int e : dof_bedges_[r]) {
            auto it = bcs.find(pm_.edge_tag[e]);
            if (it == bcs.end()) continue;
            const auto& bc = it->second;
            double len = (pm_.vertices[pm_.edges[e][1]] - pm_.vertices[pm_.edges[e][0]]).norm();
            Vec2 n = (pm_.vertices[pm_.edges[e][1]] - pm_.vertices[pm_.edges[e][0]]).perp();
            if (n.dot(pm_.barycenter[primal_owner(e)] - pm_.edge_mid[e]) > 0.0) n = -n;
            n = n / n.norm();
            Vec2 mom_n;
            if (bc.type == BCType::StrongDirichlet) {
                Primitive q = bc.state(pm_.edge_mid[e], time + dt);
                mom_n = q.rho * q.vel;
            } else if (bc.type == BCType::WeakDirichlet || bc.type == BCType::InviscidWall) {
                continue;  // impermeable: W_u . n = 0
            } else {
                continue;  // Neumann boundaries carry the pressure Dirichlet value instead
            }
            brow -= dt * H_cell[dm_.edge_cell[e]] * mom_n.dot(n) * 0.5 * len;
        }
        sys.b[r] += brow;
    }

    // symmetric elimination of pressure-Dirichlet unknowns
    bool any_dir = false;
    for (char c : sys.dirichlet) any_dir |= (c != 0);
    if (any_dir) {
        for (int r = 0; r < dm_.n_dofs; ++r) {
            if (sys.dirichlet[r]) continue;
            for (int k = sys.A.row_ptr[r]; k < sys.A.row_ptr[r + 1]; ++k) {
                int c = sys.A.col[k];
                if (sys.dirichlet[c]) {
                    sys.b[r] -= sys.A.val[k] * dir_val[c];
                    sys.A.val[k] = 0.0;
                }
            }
        }
        for (int r = 0; r < dm_.n_dofs; ++r) {
            if (!sys.dirichlet[r]) continue;
            for (int k = sys.A.row_ptr[r]; k < sys.A.row_ptr[r + 1]; ++k)
                sys.A.val[k] = (sys.A.col[k] == r) ? 1.0 : 0.0;
            sys.b[r] = dir_val[r];
        }
        sys.zero_mean = false;
    }
    return sys;
}

int PressureSolver::primal_owner(int edge) const { return pm_.edge_tris[edge][0]; }

ProjectionResult PressureSolver::run(const TransportResult& tr, const FieldSet& fn,
                                     const FluidParams& par, const BoundaryTable& bcs, double dt,
                                     double time, const ProjectionOptions& opt,
                                     const std::vector<double>* warm_start) const {
    const int nc = dm_.n_cells;
    const double g1 = par.gamma / (par.gamma - 1.0);

    std::vector<char> strong(nc, 0);
    std::vector<Conserved> strong_state(nc);
    for (const auto& bf : dm_.bfaces) {
        auto it = bcs.find(bf.tag);
        if (it != bcs.end() && it->second.type == BCType::StrongDirichlet) {
            strong[bf.cell] = 1;
            strong_state[bf.cell] = prim_to_cons(it->second.state(dm_.node[bf.cell], time + dt), par);
        }
    }

    // intermediate fields on the primal grid (computed once per step)
    std::vector<double> We_tri = dual_to_primal(tr.E, pm_, dm_);
    std::vector<Vec2> Wu_tri(pm_.n_tris());
    {
        std::vector<double> mx = dual_to_primal(tr.mom_x, pm_, dm_);
        std::vector<double> my = dual_to_primal(tr.mom_y, pm_, dm_);
        for (int t = 0; t < pm_.n_tris(); ++t) Wu_tri[t] = {mx[t], my[t]};
    }

    // first guesses
    std::vector<double> H_cell(nc), rhoK_cell(nc);
    for (int c = 0; c < nc; ++c) {
        double Pn_i = fn.cell_pressure(dm_.cell_edge[c], pm_, dm_);
        H_cell[c] = g1 * Pn_i / tr.rho[c];
        rhoK_cell[c] = 0.5 * (tr.mom_x[c] * tr.mom_x[c] + tr.mom_y[c] * tr.mom_y[c]) / tr.rho[c];
    }

    ProjectionResult res;
    res.mom_x = tr.mom_x;
    res.mom_y = tr.mom_y;
    res.P = fn.P;
    res.dP.assign(dm_.n_dofs, 0.0);
    if (warm_start && static_cast<int>(warm_start->size()) == dm_.n_dofs) res.dP = *warm_start;

    for (int k = 0; k < opt.n_pic; ++k) {
        std::vector<double> H_tri = dual_to_primal(H_cell, pm_, dm_);
        std::vector<double> rhoK_tri = dual_to_primal(rhoK_cell, pm_, dm_);
        PressureSystem sys = assemble(H_tri, rhoK_tri, We_tri, Wu_tri, fn.P, H_cell, par, bcs, dt,
                                      time, opt.zero_mean);
        CGResult cg = solve_spd(sys, res.dP, opt.cg_tol, opt.cg_max_factor * dm_.n_dofs);
        res.cg_iters += cg.iters;
        res.cg_residual = cg.rel_residual;

        for (int d = 0; d < dm_.n_dofs; ++d) res.P[d] = fn.P[d] + res.dP[d];

#pragma omp parallel for schedule(static)
        for (int c = 0; c < nc; ++c) {
            if (strong[c]) {
                res.mom_x[c] = strong_state[c].mom.x;
                res.mom_y[c] = strong_state[c].mom.y;
            } else {
                Vec2 gdp = pressure_gradient_term(c, res.dP, pm_, dm_) / dm_.area[c];
                res.mom_x[c] = tr.mom_x[c] - dt * gdp.x;
                res.mom_y[c] = tr.mom_y[c] - dt * gdp.y;
            }
            double P_i = 0.5 * (res.P[dm_.vertex_dof[pm_.edges[dm_.cell_edge[c]][0]]] +
                                res.P[dm_.vertex_dof[pm_.edges[dm_.cell_edge[c]][1]]]);
            H_cell[c] = g1 * P_i / tr.rho[c];
            rhoK_cell[c] =
                0.5 * (res.mom_x[c] * res.mom_x[c] + res.mom_y[c] * res.mom_y[c]) / tr.rho[c];
        }
    }

    res.E = post_projection_energy(tr.E, We_tri, H_cell, res.mom_x, res.mom_y, pm_, dm_, par, bcs,
                                   dt, time, opt.energy_increment);
    for (int c = 0; c < nc; ++c)
        if (strong[c]) res.E[c] = strong_state[c].E;
    return res;
}

std::vector<double> post_projection_energy(const std::vector<double>& We_dual,
                                           const std::vector<double>& We_tri,
                                           const std::vector<double>& H_cell,
                                           const std::vector<double>& mom_x,
                                           const std::vector<double>& mom_y,
                                           const PrimalMesh& pm, const DualMesh& dm,
                                           const FluidParams& par, const BoundaryTable& bcs,
                                           double dt, double time, bool increment_variant) {
    const int ne = pm.n_edges();
    const double g1 = par.gamma / (par.gamma - 1.0);

    // enthalpy flux through each primal edge, oriented out of edge_tris[e][0]
    std::vector<double> flux(ne, 0.0);
#pragma omp parallel for schedule(static)
    for (int e = 0; e < ne; ++e) {
        int t0 = pm.edge_tris[e][0];
        Vec2 n = (pm.vertices[pm.edges[e][1]] - pm.vertices[pm.edges[e][0]]).perp();
        if (n.dot(pm.barycenter[t0] - pm.edge_mid[e]) > 0.0) n = -n;
        int cell = dm.edge_cell[e];
        double H = H_cell[cell];
        Vec2 mom{mom_x[cell], mom_y[cell]};
        if (pm.edge_tag[e] >= 0 && pm.edge_tris[e][1] == -1) {
            auto it = bcs.find(pm.edge_tag[e]);
            if (it != bcs.end()) {
                const auto& bc = it->second;
                if (bc.type == BCType::WeakDirichlet || bc.type == BCType::InviscidWall)
                    continue;  // impermeable wall: no enthalpy flux
                if (bc.type == BCType::StrongDirichlet) {
                    Primitive q = bc.state(pm.edge_mid[e], time + dt);
                    H = g1 * q.p / q.rho;
                    mom = q.rho * q.vel;
                }
            }
        }
        flux[e] = H * mom.dot(n);
    }

    std::vector<double> incr_tri(pm.n_tris());
#pragma omp parallel for schedule(static)
    for (int t = 0; t < pm.n_tris(); ++t) {
        double div = 0.0;
        for (int k = 0; k < 3; ++k) {
            int e = pm.tri_edges[t][k];
            div += (pm.edge_tris[e][0] == t) ? flux[e] : -flux[e];
        }
        incr_tri[t] = -dt / pm.area[t] * div;
    }

    std::vector<double> out(dm.n_cells);
    if (increment_variant) {
#pragma omp parallel for schedule(static)
        for (int c = 0; c < dm.n_cells; ++c) out[c] = We_dual[c];
    } else {
#pragma omp parallel for schedule(static)
        for (int c = 0; c < dm.n_cells; ++c) out[c] = 0.0;
    }

    // interpolate back with the subelement weights |T_k|/3
    std::vector<double> acc(dm.n_cells, 0.0);
    for (int e = 0; e < ne; ++e) {
        int c = dm.edge_cell[e];
        for (int s = 0; s < 2; ++s) {
            int t = pm.edge_tris[e][s];
            if (t < 0) continue;
            double w = pm.area[t] / 3.0;
            acc[c] += w * (increment_variant ? incr_tri[t] : We_tri[t] + incr_tri[t]);
        }
    }
#pragma omp parallel for schedule(static)
    for (int c = 0; c < dm.n_cells; ++c) out[c] += acc[c] / dm.area[c];
    return out;
}

} // namespace allmach
