#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "allmach/pressure_fem.hpp"
#include "allmach/transport.hpp"

namespace allmach {

struct RunConfig {
    FluidParams fluid;
    BoundaryTable bcs;

    double cfl = 0.5;  // 1/d in d space dimensions
    double c_alpha = 0.0;
    int n_pic = 2;
    bool lader = true;
    LimiterChoice limiter = LimiterChoice::ENO;
    bool primitive_recon = false;
    bool energy_increment = false;
    bool zero_mean = false;
    bool serial = false;

    double t_end = 1.0;
    double fixed_dt = 0.0;  // > 0 overrides the CFL condition
    double dt_max = 0.0;    // cap for the degenerate zero-signal case; 0 = t_end/10
    double cg_tol = 1e-10;

    void validate() const {
        fluid.validate();
        if (!(cfl > 0.0)) throw SolverError("RunConfig: CFL must be positive");
        if (!(t_end > 0.0)) throw SolverError("RunConfig: t_end must be positive");
        if (n_pic < 1) throw SolverError("RunConfig: N_Pic must be at least 1");
    }
};

struct StepDiagnostics {
    int step = 0;
    double t = 0.0;    // time reached after the step
    double dt = 0.0;
    double cfl_c = 0.0;  // realized acoustic Courant number
    double mass = 0.0, mom_x = 0.0, mom_y = 0.0, energy = 0.0;
    int cg_iters = 0;
    double min_rho = 0.0, max_rho = 0.0, min_p = 0.0, max_p = 0.0;
};

// Velocity-limited time step: the sound speed never enters.
double compute_dt(const FieldSet& f, const DualMesh& dual, const FluidParams& par,
                  const RunConfig& cfg);

// Realized acoustic Courant number max_i(c_i dt / r_i).
double acoustic_cfl(const FieldSet& f, const PrimalMesh& primal, const DualMesh& dual,
                    const FluidParams& par, double dt);

class Simulation {
public:
    // Applies mesh-level periodicity for tags marked Periodic in cfg.bcs.
    Simulation(PrimalMesh primal, RunConfig cfg, const std::function<Primitive(Vec2)>& ic);

    const PrimalMesh& primal() const { return primal_; }
    const DualMesh& dual() const { return dual_; }
    const RunConfig& config() const { return cfg_; }
    FieldSet& fields() { return f_; }
    const FieldSet& fields() const { return f_; }
    double time() const { return t_; }
    int step_count() const { return step_; }

    double next_dt() const;
    StepDiagnostics step(double dt_override = 0.0);

    using Observer = std::function<void(const StepDiagnostics&, const FieldSet&)>;
    using StopCondition = std::function<bool(const StepDiagnostics&, const FieldSet&)>;
    // Advances to t_end; the last step is clipped to land exactly on it.
    void run(const Observer& obs = nullptr, const StopCondition& stop = nullptr,
             int max_steps = 0);

    const std::vector<StepDiagnostics>& history() const { return history_; }

private:
    PrimalMesh primal_;
    DualMesh dual_;
    RunConfig cfg_;
    FieldSet f_;
    std::unique_ptr<PressureSolver> psolver_;
    std::vector<double> warm_dp_;
    double t_ = 0.0;
    int step_ = 0;
    std::vector<StepDiagnostics> history_;
};

} // namespace allmach
