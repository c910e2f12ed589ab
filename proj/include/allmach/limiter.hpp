#pragma once

#include <algorithm>
#include <cmath>

#include "allmach/vec2.hpp"

namespace allmach {

enum class LimiterChoice { None, ENO, BarthJespersen, Minmod };

// Per-face, per-side slope selection for the piecewise-linear reconstruction.
//   g_central: gradient on the triangle containing the face
//   g_upwind:  gradient on the upwind triangle of this side
//   d:         N_ij - N_i, the extrapolation offset of this side
//   wi, wj:    adjacent cell values (bounds for Barth-Jespersen)
inline Vec2 select_gradient(LimiterChoice lim, const Vec2& g_central, const Vec2& g_upwind,
                            const Vec2& d, double wi, double wj) {
    switch (lim) {
        case LimiterChoice::None:
            return g_central;
        case LimiterChoice::ENO:
            // keep the candidate with the smaller extrapolated increment
            return std::abs(g_upwind.dot(d)) <= std::abs(g_central.dot(d)) ? g_upwind : g_central;
        case LimiterChoice::BarthJespersen: {
            double dc = g_central.dot(d);
            if (dc == 0.0) return g_central;
            double lo = std::min(0.0, wj - wi);
            double hi = std::max(0.0, wj - wi);
            double psi = dc > hi ? hi / dc : (dc < lo ? lo / dc : 1.0);
            return g_central * std::clamp(psi, 0.0, 1.0);
        }
        case LimiterChoice::Minmod: {
            double dc = g_central.dot(d);
            double du = g_upwind.dot(d);
            if (dc * du <= 0.0) return Vec2{0.0, 0.0};
            return std::abs(dc) <= std::abs(du) ? g_central : g_upwind;
        }
    }
    return g_central;
}

} // namespace allmach
