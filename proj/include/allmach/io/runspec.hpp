#pragma once

#include <map>
#include <string>

#include "allmach/stepper.hpp"

namespace allmach {

// Parsed run specification: mesh source, initial condition selector, boundary
// table and numerical settings. Resolved into a Simulation by
// build_simulation() once the initial-condition parameters are bound.
struct RunSpec {
    // mesh
    std::string mesh_type = "structured";  // structured | file
    int nx = 0, ny = 0;
    Vec2 lo{0.0, 0.0}, hi{1.0, 1.0};
    bool alternate_diagonal = false;
    std::string mesh_path;

    // initial condition
    std::string ic_type;
    std::map<std::string, double> ic;

    // boundary conditions: tag -> type string
    std::map<int, std::string> bc_type;
    std::map<int, double> bc_pressure;

    RunConfig config;
    int output_every = 0;

    double ic_param(const std::string& key, double fallback) const {
        auto it = ic.find(key);
        return it == ic.end() ? fallback : it->second;
    }
};

RunSpec parse_runspec(const std::string& path);
void write_runspec(const RunSpec& spec, const std::string& path);

// Maps a structured-mesh side name to its boundary tag.
int side_tag(const std::string& name);

} // namespace allmach
