#include "allmach/io/runspec.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace allmach {

namespace {

std::string trim(const std::string& s) {
    auto a = s.find_first_not_of(" \t\r\n");
    auto b = s.find_last_not_of(" \t\r\n");
    return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

bool parse_bool(const std::string& v, const std::string& key) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw SolverError("runspec: invalid boolean for " + key + ": " + v);
}

LimiterChoice parse_limiter(const std::string& v) {
    if (v == "none") return LimiterChoice::None;
    if (v == "eno") return LimiterChoice::ENO;
    if (v == "barth_jespersen" || v == "bj") return LimiterChoice::BarthJespersen;
    if (v == "minmod") return LimiterChoice::Minmod;
    throw SolverError("runspec: unknown limiter " + v);
}

} // namespace

int side_tag(const std::string& name) {
    if (name == "bottom") return tag::bottom;
    if (name == "right") return tag::right;
    if (name == "top") return tag::top;
    if (name == "left") return tag::left;
    if (name.rfind("tag", 0) == 0) return std::stoi(name.substr(3));
    throw SolverError("runspec: unknown boundary name " + name);
}

RunSpec parse_runspec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SolverError("cannot open run spec " + path);

    RunSpec s;
    s.config.cfl = 0.5;  // 1/d in two dimensions
    bool have_ic = false, have_tend = false;

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto pos = line.find('#');
        if (pos != std::string::npos) line.erase(pos);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw SolverError(path + ":" + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw SolverError(path + ":" + std::to_string(lineno) + ": empty key or value");

        auto num = [&] {
            try {
                size_t used = 0;
                double d = std::stod(val, &used);
                if (used != val.size()) throw std::invalid_argument(val);
                return d;
            } catch (...) {
                throw SolverError(path + ":" + std::to_string(lineno) + ": invalid number " + val);
            }
        };

        if (key == "mesh.type") s.mesh_type = val;
        else if (key == "mesh.nx") s.nx = static_cast<int>(num());
        else if (key == "mesh.ny") s.ny = static_cast<int>(num());
        else if (key == "mesh.xmin") s.lo.x = num();
        else if (key == "mesh.xmax") s.hi.x = num();
        else if (key == "mesh.ymin") s.lo.y = num();
        else if (key == "mesh.ymax") s.hi.y = num();
        else if (key == "mesh.alternate_diagonal") s.alternate_diagonal = parse_bool(val, key);
        else if (key == "mesh.path") s.mesh_path = val;
        else if (key == "ic.type") { s.ic_type = val; have_ic = true; }
        else if (key.rfind("ic.", 0) == 0) s.ic[key.substr(3)] = num();
        else if (key.rfind("bc.", 0) == 0) {
            std::string rest = key.substr(3);
            auto dot = rest.find('.');
            if (dot == std::string::npos) {
                s.bc_type[side_tag(rest)] = val;
            } else if (rest.substr(dot + 1) == "pressure") {
                s.bc_pressure[side_tag(rest.substr(0, dot))] = num();
            } else {
                throw SolverError("runspec: unknown key " + key);
            }
        }
        else if (key == "t_end") { s.config.t_end = num(); have_tend = true; }
        else if (key == "cfl") s.config.cfl = num();
        else if (key == "c_alpha") s.config.c_alpha = num();
        else if (key == "n_pic") s.config.n_pic = static_cast<int>(num());
        else if (key == "order") {
            if (val == "first") s.config.lader = false;
            else if (val == "lader") s.config.lader = true;
            else throw SolverError("runspec: order must be first or lader, got " + val);
        }
        else if (key == "limiter") s.config.limiter = parse_limiter(val);
        else if (key == "recon_vars") {
            if (val == "conservative") s.config.primitive_recon = false;
            else if (val == "primitive") s.config.primitive_recon = true;
            else throw SolverError("runspec: recon_vars must be conservative or primitive");
        }
        else if (key == "energy_update") {
            if (val == "base") s.config.energy_increment = false;
            else if (val == "increment") s.config.energy_increment = true;
            else throw SolverError("runspec: energy_update must be base or increment");
        }
        else if (key == "zero_mean") s.config.zero_mean = parse_bool(val, key);
        else if (key == "fixed_dt") s.config.fixed_dt = num();
        else if (key == "dt_max") s.config.dt_max = num();
        else if (key == "cg_tol") s.config.cg_tol = num();
        else if (key == "gamma") s.config.fluid.gamma = num();
        else if (key == "cv") s.config.fluid.c_v = num();
        else if (key == "mu") s.config.fluid.mu = num();
        else if (key == "lambda") s.config.fluid.lambda = num();
        else if (key == "gravity_x") s.config.fluid.gravity.x = num();
        else if (key == "gravity_y") s.config.fluid.gravity.y = num();
        else if (key == "output.every") s.output_every = static_cast<int>(num());
        else throw SolverError(path + ":" + std::to_string(lineno) + ": unknown key " + key);
    }

    if (!have_ic) throw SolverError("runspec: missing ic.type");
    if (!have_tend) throw SolverError("runspec: missing t_end");
    if (s.mesh_type == "structured") {
        if (s.nx < 1 || s.ny < 1) throw SolverError("runspec: structured mesh needs mesh.nx/ny");
        for (const char* side : {"bottom", "right", "top", "left"})
            if (!s.bc_type.count(side_tag(side)))
                throw SolverError("runspec: missing boundary condition bc." + std::string(side));
    } else if (s.mesh_type == "file") {
        if (s.mesh_path.empty()) throw SolverError("runspec: mesh.type=file needs mesh.path");
    } else {
        throw SolverError("runspec: mesh.type must be structured or file");
    }
    // periodic directions must pair up on structured meshes
    if (s.mesh_type == "structured") {
        auto is_per = [&](int t) {
            auto it = s.bc_type.find(t);
            return it != s.bc_type.end() && it->second == "periodic";
        };
        if (is_per(tag::left) != is_per(tag::right))
            throw SolverError("runspec: periodic left/right must pair");
        if (is_per(tag::bottom) != is_per(tag::top))
            throw SolverError("runspec: periodic bottom/top must pair");
    }
    return s;
}

void write_runspec(const RunSpec& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw SolverError("cannot write " + path);
    char buf[128];
    auto put = [&](const std::string& k, double v) {
        std::snprintf(buf, sizeof buf, "%s = %.17g\n", k.c_str(), v);
        out << buf;
    };
    out << "mesh.type = " << s.mesh_type << "\n";
    if (s.mesh_type == "structured") {
        put("mesh.nx", s.nx);
        put("mesh.ny", s.ny);
        put("mesh.xmin", s.lo.x);
        put("mesh.xmax", s.hi.x);
        put("mesh.ymin", s.lo.y);
        put("mesh.ymax", s.hi.y);
        out << "mesh.alternate_diagonal = " << (s.alternate_diagonal ? "true" : "false") << "\n";
    } else {
        out << "mesh.path = " << s.mesh_path << "\n";
    }
    out << "ic.type = " << s.ic_type << "\n";
    for (const auto& [k, v] : s.ic) put("ic." + k, v);
    for (const auto& [t, ty] : s.bc_type) {
        std::string name = t == tag::bottom ? "bottom"
                           : t == tag::right ? "right"
                           : t == tag::top   ? "top"
                           : t == tag::left  ? "left"
                                             : "tag" + std::to_string(t);
        out << "bc." << name << " = " << ty << "\n";
        auto itp = s.bc_pressure.find(t);
        if (itp != s.bc_pressure.end()) put("bc." + name + ".pressure", itp->second);
    }
    put("t_end", s.config.t_end);
    put("cfl", s.config.cfl);
    put("c_alpha", s.config.c_alpha);
    put("n_pic", s.config.n_pic);
    out << "order = " << (s.config.lader ? "lader" : "first") << "\n";
    out << "limiter = "
        << (s.config.limiter == LimiterChoice::None            ? "none"
            : s.config.limiter == LimiterChoice::ENO           ? "eno"
            : s.config.limiter == LimiterChoice::BarthJespersen ? "barth_jespersen"
                                                                : "minmod")
        << "\n";
    out << "recon_vars = " << (s.config.primitive_recon ? "primitive" : "conservative") << "\n";
    out << "energy_update = " << (s.config.energy_increment ? "increment" : "base") << "\n";
    if (s.config.fixed_dt > 0.0) put("fixed_dt", s.config.fixed_dt);
    if (s.config.dt_max > 0.0) put("dt_max", s.config.dt_max);
    put("gamma", s.config.fluid.gamma);
    put("cv", s.config.fluid.c_v);
    put("mu", s.config.fluid.mu);
    put("lambda", s.config.fluid.lambda);
    if (s.config.fluid.gravity.norm() > 0.0) {
        put("gravity_x", s.config.fluid.gravity.x);
        put("gravity_y", s.config.fluid.gravity.y);
    }
    if (s.output_every > 0) put("output.every", s.output_every);
}

} // namespace allmach
