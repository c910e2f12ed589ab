#pragma once

#include <functional>
#include <string>
#include <vector>

#include "allmach/io/runspec.hpp"
#include "allmach/stepper.hpp"

namespace allmach {

// Resolves a parsed run spec into a ready simulation: builds the mesh, binds
// the initial-condition function and fills the boundary table.
Simulation build_simulation(const RunSpec& spec);

// The initial-condition function bound by a spec (also used for references).
std::function<Primitive(Vec2)> make_ic(const RunSpec& spec);

// Named benchmark presets. Each reproduces a fixed configuration: mesh size,
// final time, artificial viscosity and limiter choice.
std::vector<std::string> preset_names();
bool is_preset(const std::string& name);
RunSpec make_preset(const std::string& name);

// Riemann-problem preset data shared by the CLI report and the test suites.
struct RiemannSetup {
    Primitive left, right;
    double x_c = 0.0;
    double t_end = 0.0;
    int nx = 0;
};
RiemannSetup riemann_setup(int index);  // 1..6

} // namespace allmach
