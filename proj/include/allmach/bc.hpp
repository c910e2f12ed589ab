#pragma once

#include <functional>
#include <map>

#include "allmach/state.hpp"

namespace allmach {

enum class BCType {
    Periodic,         // handled at mesh level by fusing matching cells
    StrongDirichlet,  // exact state imposed as the cell average
    WeakDirichlet,    // ghost state 2*W_exact - W_i (viscous boundaries)
    InviscidWall,     // mirror ghost state W_i - 2 (W_i . n) n
    Neumann,          // zero-gradient outflow; pairs with a pressure Dirichlet value
};

struct BoundaryCondition {
    BCType type = BCType::Periodic;
    // exact primitive state at (position, time); unused for walls/outflow
    std::function<Primitive(Vec2, double)> state;
    // Dirichlet pressure for the projection system (Neumann boundaries)
    double pressure = 0.0;
    bool has_pressure = false;
};

using BoundaryTable = std::map<int, BoundaryCondition>;

} // namespace allmach
