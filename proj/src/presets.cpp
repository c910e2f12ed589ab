#include "allmach/presets.hpp"

#include <algorithm>
#include <cmath>

#include "allmach/io/mesh_io.hpp"
#include "allmach/oracles/becker_shock.hpp"
#include "allmach/oracles/stokes_first.hpp"
#include "allmach/oracles/taylor_green.hpp"

namespace allmach {

std::function<Primitive(Vec2)> make_ic(const RunSpec& s) {
    const double gamma = s.config.fluid.gamma;
    if (s.ic_type == "uniform") {
        Primitive q{s.ic_param("rho", 1.0), {s.ic_param("u", 0.0), s.ic_param("v", 0.0)},
                    s.ic_param("p", 1.0)};
        return [q](Vec2) { return q; };
    }
    if (s.ic_type == "riemann") {
        Primitive l{s.ic_param("rho_l", 1.0), {s.ic_param("u_l", 0.0), 0.0}, s.ic_param("p_l", 1.0)};
        Primitive r{s.ic_param("rho_r", 1.0), {s.ic_param("u_r", 0.0), 0.0}, s.ic_param("p_r", 1.0)};
        double xc = s.ic_param("x_c", 0.0);
        return [l, r, xc](Vec2 x) { return x.x <= xc ? l : r; };
    }
    if (s.ic_type == "tgv") {
        double p0 = s.ic_param("p0", 1e5);
        return [p0, gamma](Vec2 x) { return taylor_green_exact(x, p0, gamma); };
    }
    if (s.ic_type == "explosion") {
        Primitive in{s.ic_param("rho_in", 1.0), {0.0, 0.0}, s.ic_param("p_in", 1.0)};
        Primitive out{s.ic_param("rho_out", 0.125), {0.0, 0.0}, s.ic_param("p_out", 0.1)};
        double r0 = s.ic_param("r0", 0.5);
        return [in, out, r0](Vec2 x) { return x.norm() <= r0 ? in : out; };
    }
    if (s.ic_type == "stokes") {
        double v0 = s.ic_param("v0", 0.1);
        double p = s.ic_param("p", 1.0 / gamma);
        return [v0, p](Vec2 x) {
            return Primitive{1.0, {0.0, x.x <= 0.0 ? -v0 : v0}, p};
        };
    }
    if (s.ic_type == "vshock") {
        BeckerShock shock(s.config.fluid, s.ic_param("rho0", 1.0), s.ic_param("u0", -2.0),
                          s.ic_param("p0", 1.0 / gamma));
        return [shock](Vec2 x) { return shock(x.x); };
    }
    if (s.ic_type == "cavity") {
        double p0 = s.ic_param("p0", 1e4);
        return [p0](Vec2) { return Primitive{1.0, {0.0, 0.0}, p0}; };
    }
    if (s.ic_type == "shear") {
        double rho_hat = s.ic_param("rho_hat", 30.0);
        double delta = s.ic_param("delta", 0.05);
        double p0 = s.ic_param("p0", 1e5 / 1.4);
        return [rho_hat, delta, p0](Vec2 x) {
            double xh = 0.5 * (x.x + 1.0), yh = 0.5 * (x.y + 1.0);
            double u1 = yh <= 0.5 ? std::tanh(rho_hat * (yh - 0.25))
                                  : std::tanh(rho_hat * (0.75 - yh));
            return Primitive{1.0, {u1, delta * std::sin(2.0 * M_PI * xh)}, p0};
        };
    }
    throw SolverError("unknown ic.type " + s.ic_type);
}

namespace {

BoundaryTable make_bcs(const RunSpec& s, const std::function<Primitive(Vec2)>& ic) {
    BoundaryTable bcs;
    for (const auto& [t, ty] : s.bc_type) {
        BoundaryCondition bc;
        if (ty == "periodic") {
            bc.type = BCType::Periodic;
        } else if (ty == "strong_dirichlet") {
            bc.type = BCType::StrongDirichlet;
        } else if (ty == "weak_dirichlet") {
            bc.type = BCType::WeakDirichlet;
        } else if (ty == "inviscid_wall") {
            bc.type = BCType::InviscidWall;
        } else if (ty == "neumann") {
            bc.type = BCType::Neumann;
        } else {
            throw SolverError("unknown boundary condition type " + ty);
        }
        if (bc.type == BCType::StrongDirichlet || bc.type == BCType::WeakDirichlet) {
            // default boundary data: the initial condition held fixed
            bc.state = [ic](Vec2 x, double) { return ic(x); };
        }
        auto itp = s.bc_pressure.find(t);
        if (itp != s.bc_pressure.end()) {
            bc.has_pressure = true;
            bc.pressure = itp->second;
        }
        bcs[t] = bc;
    }
    return bcs;
}

} // namespace

Simulation build_simulation(const RunSpec& s) {
    PrimalMesh mesh = s.mesh_type == "file"
                          ? read_primal_mesh(s.mesh_path)
                          : PrimalMesh::structured(s.nx, s.ny, s.lo, s.hi, s.alternate_diagonal);
    auto ic = make_ic(s);
    RunConfig cfg = s.config;
    cfg.bcs = make_bcs(s, ic);

    // time-dependent boundary data for the impulsive shear benchmark
    if (s.ic_type == "stokes") {
        double v0 = s.ic_param("v0", 0.1);
        double p = s.ic_param("p", 1.0 / cfg.fluid.gamma);
        double mu = cfg.fluid.mu;
        for (auto& [t, bc] : cfg.bcs)
            if (bc.type == BCType::StrongDirichlet)
                bc.state = [v0, p, mu](Vec2 x, double time) {
                    double u2 = time > 0.0 ? stokes_first_exact(x.x, time, mu)
                                           : (x.x <= 0.0 ? -v0 : v0);
                    return Primitive{1.0, {0.0, u2}, p};
                };
    }
    // the moving lid of the cavity benchmark
    if (s.ic_type == "cavity") {
        auto it = cfg.bcs.find(tag::top);
        if (it != cfg.bcs.end() && it->second.type == BCType::WeakDirichlet) {
            double p0 = s.ic_param("p0", 1e4);
            it->second.state = [p0](Vec2, double) { return Primitive{1.0, {1.0, 0.0}, p0}; };
        }
    }
    return Simulation(std::move(mesh), std::move(cfg), ic);
}

RiemannSetup riemann_setup(int index) {
    switch (index) {
        case 1: return {{1.0, {0.0, 0.0}, 1.0}, {0.125, {0.0, 0.0}, 0.1}, 0.0, 0.2, 200};
        case 2: return {{1.0, {-1.0, 0.0}, 0.4}, {1.0, {1.0, 0.0}, 0.4}, 0.0, 0.15, 300};
        case 3: return {{0.445, {0.698, 0.0}, 3.528}, {0.5, {0.0, 0.0}, 0.571}, 0.0, 0.14, 200};
        case 4:
            return {{5.99924, {19.5975, 0.0}, 460.894},
                    {5.99242, {-6.19633, 0.0}, 46.095},
                    -0.2, 0.035, 200};
        case 5:
            return {{1.0, {-19.59745, 0.0}, 1000.0}, {1.0, {-19.59745, 0.0}, 0.01}, 0.3, 0.01, 300};
        case 6: return {{1.0, {2.0, 0.0}, 0.1}, {1.0, {-2.0, 0.0}, 0.1}, 0.0, 0.8, 200};
    }
    throw SolverError("Riemann setup index must be 1..6");
}

std::vector<std::string> preset_names() {
    return {"tgv-convergence", "rp1", "rp2", "rp3", "rp4", "rp5", "rp6",
            "explosion2d", "stokes1", "vshock", "cavity", "shear-layer"};
}

bool is_preset(const std::string& name) {
    auto names = preset_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

RunSpec make_preset(const std::string& name) {
    RunSpec s;
    s.config.cfl = 0.5;
    s.config.fluid.gamma = 1.4;
    s.config.fluid.c_v = 2.5;

    auto strip = [&](int nx, double t_end) {
        // shock-tube strip: thin periodic band in y with square cells
        s.mesh_type = "structured";
        s.nx = nx;
        s.ny = 4;
        s.lo = {-0.5, 0.0};
        s.hi = {0.5, 4.0 / nx};
        s.bc_type = {{tag::left, "strong_dirichlet"},
                     {tag::right, "strong_dirichlet"},
                     {tag::bottom, "periodic"},
                     {tag::top, "periodic"}};
        s.config.t_end = t_end;
    };
    auto riemann_ic = [&](const RiemannSetup& rp) {
        s.ic_type = "riemann";
        s.ic = {{"rho_l", rp.left.rho},  {"u_l", rp.left.vel.x},  {"p_l", rp.left.p},
                {"rho_r", rp.right.rho}, {"u_r", rp.right.vel.x}, {"p_r", rp.right.p},
                {"x_c", rp.x_c}};
    };

    if (name == "tgv-convergence") {
        s.mesh_type = "structured";
        s.nx = s.ny = 16;
        s.lo = {0.0, 0.0};
        s.hi = {2.0 * M_PI, 2.0 * M_PI};
        s.ic_type = "tgv";
        s.ic = {{"p0", 1e5}};
        s.bc_type = {{tag::left, "periodic"},
                     {tag::right, "periodic"},
                     {tag::bottom, "periodic"},
                     {tag::top, "periodic"}};
        s.config.t_end = 0.1;
        s.config.fixed_dt = 0.25;
        s.config.lader = true;
        s.config.limiter = LimiterChoice::ENO;
        return s;
    }
    if (name.rfind("rp", 0) == 0 && name.size() == 3) {
        int idx = name[2] - '0';
        RiemannSetup rp = riemann_setup(idx);
        strip(rp.nx, rp.t_end);
        riemann_ic(rp);
        s.config.lader = true;
        s.config.limiter = LimiterChoice::ENO;
        switch (idx) {
            case 1: s.config.c_alpha = 1.0; break;
            case 2: s.config.c_alpha = 2.0; break;
            case 3: s.config.c_alpha = 0.0; break;
            case 4:
                s.config.c_alpha = 5.0;
                s.config.limiter = LimiterChoice::BarthJespersen;
                s.config.primitive_recon = true;
                break;
            case 5:
                s.config.c_alpha = 2.0;
                s.config.limiter = LimiterChoice::Minmod;
                break;
            case 6: s.config.c_alpha = 2.0; break;
        }
        return s;
    }
    if (name == "explosion2d") {
        s.mesh_type = "structured";
        s.nx = s.ny = 100;  // 20000 triangles
        s.lo = {-1.0, -1.0};
        s.hi = {1.0, 1.0};
        s.alternate_diagonal = true;
        s.ic_type = "explosion";
        s.ic = {{"rho_in", 1.0}, {"p_in", 1.0}, {"rho_out", 0.125}, {"p_out", 0.1}, {"r0", 0.5}};
        s.bc_type = {{tag::left, "periodic"},
                     {tag::right, "periodic"},
                     {tag::bottom, "periodic"},
                     {tag::top, "periodic"}};
        s.config.t_end = 0.25;
        s.config.c_alpha = 1.0;
        s.config.lader = true;
        return s;
    }
    if (name == "stokes1") {
        s.mesh_type = "structured";
        s.nx = 25;  // 1000 triangles
        s.ny = 20;
        s.lo = {-0.5, -0.5};
        s.hi = {0.5, 0.5};
        s.ic_type = "stokes";
        s.ic = {{"v0", 0.1}};
        s.bc_type = {{tag::left, "strong_dirichlet"},
                     {tag::right, "strong_dirichlet"},
                     {tag::bottom, "periodic"},
                     {tag::top, "periodic"}};
        s.config.t_end = 1.0;
        s.config.fluid.gamma = 1.4;
        s.config.fluid.c_v = 1.0;  // c_p = gamma
        s.config.fluid.mu = 1e-3;
        s.config.lader = true;
        s.config.limiter = LimiterChoice::None;
        return s;
    }
    if (name == "vshock") {
        s.mesh_type = "structured";
        s.nx = 250;
        s.ny = 25;
        s.lo = {-0.5, 0.0};
        s.hi = {0.5, 0.1};
        s.ic_type = "vshock";
        s.ic = {{"rho0", 1.0}, {"u0", -2.0}, {"p0", 1.0 / 1.4}};
        s.bc_type = {{tag::left, "strong_dirichlet"},
                     {tag::right, "strong_dirichlet"},
                     {tag::bottom, "periodic"},
                     {tag::top, "periodic"}};
        s.config.t_end = 0.025;
        s.config.c_alpha = 3.0;
        s.config.fluid.mu = 2e-2;
        s.config.fluid.lambda = 28.0 / 300.0;  // Pr = 3/4
        s.config.lader = true;
        return s;
    }
    if (name == "cavity") {
        s.mesh_type = "structured";
        s.nx = s.ny = 48;
        s.lo = {0.0, 0.0};
        s.hi = {1.0, 1.0};
        s.ic_type = "cavity";
        s.ic = {{"p0", 1e4}};
        s.bc_type = {{tag::left, "weak_dirichlet"},
                     {tag::right, "weak_dirichlet"},
                     {tag::bottom, "weak_dirichlet"},
                     {tag::top, "weak_dirichlet"}};
        s.config.t_end = 200.0;  // steady-state guard; runs stop on the increment test
        s.config.c_alpha = 2.0;
        s.config.fluid.mu = 1e-2;
        s.config.lader = true;
        return s;
    }
    if (name == "shear-layer") {
        s.mesh_type = "structured";
        s.nx = s.ny = 64;  // 8192 triangles
        s.lo = {-1.0, -1.0};
        s.hi = {1.0, 1.0};
        s.ic_type = "shear";
        s.ic = {{"rho_hat", 30.0}, {"delta", 0.05}, {"p0", 1e5 / 1.4}};
        s.bc_type = {{tag::left, "periodic"},
                     {tag::right, "periodic"},
                     {tag::bottom, "periodic"},
                     {tag::top, "periodic"}};
        s.config.t_end = 3.6;
        s.config.fluid.mu = 2e-4;
        s.config.lader = true;
        return s;
    }
    throw SolverError("unknown preset " + name);
}

} // namespace allmach
