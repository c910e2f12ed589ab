#pragma once

#include "allmach/state.hpp"

namespace allmach {

// Exact solution of the 1D Riemann problem for the ideal-gas Euler equations,
// following the classical pressure-function iteration. Velocities are the
// x-components of the primitive states.
struct RiemannSolution {
    enum class Wave { Shock, Rarefaction };

    Primitive left, right;
    double gamma = 1.4;
    double p_star = 0.0, u_star = 0.0;
    Wave left_wave = Wave::Shock, right_wave = Wave::Shock;

    // state at similarity coordinate xi = x/t
    Primitive sample(double xi) const;

    // head/tail speeds of the left and right waves and the contact speed
    double left_head() const;
    double left_tail() const;
    double right_head() const;
    double right_tail() const;
};

RiemannSolution exact_riemann(const Primitive& left, const Primitive& right, double gamma);

} // namespace allmach
