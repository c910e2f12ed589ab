#include "allmach/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace allmach {

double compute_dt(const FieldSet& f, const DualMesh& dual, const FluidParams& par,
                  const RunConfig& cfg) {
    if (cfg.fixed_dt > 0.0) return cfg.fixed_dt;
    double dt = std::numeric_limits<double>::infinity();
    for (int c = 0; c < dual.n_cells; ++c) {
        double r = dual.incircle[c];
        double umax = std::sqrt(f.mom_x[c] * f.mom_x[c] + f.mom_y[c] * f.mom_y[c]) / f.rho[c];
        double diff = par.mu / f.rho[c] + par.gamma * par.lambda / (par.c_p() * f.rho[c]);
        double denom = (umax + cfg.c_alpha) * r + 2.0 * (4.0 / 3.0) * diff;
        if (denom > 0.0) dt = std::min(dt, cfg.cfl * r * r / denom);
    }
    double cap = cfg.dt_max > 0.0 ? cfg.dt_max : cfg.t_end / 10.0;
    dt = std::min(dt, cap);
    if (!std::isfinite(dt) || !(dt > 0.0)) throw SolverError("non-finite time step");
    return dt;
}

double acoustic_cfl(const FieldSet& f, const PrimalMesh& primal, const DualMesh& dual,
                    const FluidParams& par, double dt) {
    double cfl_c = 0.0;
    for (int c = 0; c < dual.n_cells; ++c) {
        double p = f.cell_pressure(dual.cell_edge[c], primal, dual);
        double cs = std::sqrt(std::max(0.0, par.gamma * p / f.rho[c]));
        cfl_c = std::max(cfl_c, cs * dt / dual.incircle[c]);
    }
    return cfl_c;
}

Simulation::Simulation(PrimalMesh primal, RunConfig cfg, const std::function<Primitive(Vec2)>& ic)
    : primal_(std::move(primal)), cfg_(std::move(cfg)) {
    cfg_.validate();
    bool px = false, py = false;
    for (const auto& bf_tag : {tag::left, tag::right}) {
        auto it = cfg_.bcs.find(bf_tag);
        if (it != cfg_.bcs.end() && it->second.type == BCType::Periodic) px = true;
    }
    for (const auto& bf_tag : {tag::bottom, tag::top}) {
        auto it = cfg_.bcs.find(bf_tag);
        if (it != cfg_.bcs.end() && it->second.type == BCType::Periodic) py = true;
    }
    // file meshes may use arbitrary tags; any Periodic entry triggers matching
    if (!px && !py) {
        for (const auto& [t, bc] : cfg_.bcs)
            if (bc.type == BCType::Periodic) { px = py = true; break; }
    }
    dual_ = DualMesh::build(primal_, px, py);
    psolver_ = std::make_unique<PressureSolver>(primal_, dual_);
    f_ = init_fields(primal_, dual_, cfg_.fluid, ic);
}

double Simulation::next_dt() const {
    double dt = compute_dt(f_, dual_, cfg_.fluid, cfg_);
    double rem = cfg_.t_end - t_;
    if (dt > rem) dt = rem;                       // land exactly on t_end
    else if (rem - dt < 1e-12 * cfg_.t_end) dt = rem;
    return dt;
}

StepDiagnostics Simulation::step(double dt_override) {
    const double dt = dt_override > 0.0 ? dt_override : next_dt();

    f_.update_temperature(primal_, dual_, cfg_.fluid);

    TransportOptions topt;
    topt.lader = cfg_.lader;
    topt.limiter = cfg_.limiter;
    topt.primitive_recon = cfg_.primitive_recon;
    topt.c_alpha = cfg_.c_alpha;
    topt.serial = cfg_.serial;

    StepDiagnostics d;
    d.dt = dt;
    d.cfl_c = acoustic_cfl(f_, primal_, dual_, cfg_.fluid, dt);

    TransportResult tr;
    transport_stage(f_, primal_, dual_, cfg_.fluid, cfg_.bcs, dt, t_, topt, tr);

    ProjectionOptions popt;
    popt.n_pic = cfg_.n_pic;
    popt.cg_tol = cfg_.cg_tol;
    popt.zero_mean = cfg_.zero_mean;
    popt.energy_increment = cfg_.energy_increment;
    ProjectionResult pr = psolver_->run(tr, f_, cfg_.fluid, cfg_.bcs, dt, t_, popt, &warm_dp_);
    warm_dp_ = pr.dP;

    f_.rho = std::move(tr.rho);
    f_.mom_x = std::move(pr.mom_x);
    f_.mom_y = std::move(pr.mom_y);
    f_.E = std::move(pr.E);
    f_.P = std::move(pr.P);

    t_ += dt;
    ++step_;
    d.step = step_;
    d.t = t_;
    d.cg_iters = pr.cg_iters;

    d.min_rho = std::numeric_limits<double>::max();
    d.max_rho = -d.min_rho;
    d.min_p = d.min_rho;
    d.max_p = -d.min_rho;
    for (int c = 0; c < dual_.n_cells; ++c) {
        d.mass += dual_.area[c] * f_.rho[c];
        d.mom_x += dual_.area[c] * f_.mom_x[c];
        d.mom_y += dual_.area[c] * f_.mom_y[c];
        d.energy += dual_.area[c] * f_.E[c];
        d.min_rho = std::min(d.min_rho, f_.rho[c]);
        d.max_rho = std::max(d.max_rho, f_.rho[c]);
        double p = f_.cell_pressure(dual_.cell_edge[c], primal_, dual_);
        d.min_p = std::min(d.min_p, p);
        d.max_p = std::max(d.max_p, p);
    }
    history_.push_back(d);
    return d;
}

void Simulation::run(const Observer& obs, const StopCondition& stop, int max_steps) {
    while (t_ < cfg_.t_end * (1.0 - 1e-14)) {
        StepDiagnostics d = step();
        if (obs) obs(d, f_);
        if (stop && stop(d, f_)) break;
        if (max_steps > 0 && step_ >= max_steps)
            throw SolverError("run did not reach t_end within " + std::to_string(max_steps) +
                              " steps");
    }
}

} // namespace allmach
