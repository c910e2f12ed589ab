#include "allmach/oracles/radial_reference.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace allmach {

namespace {

using State = std::array<double, 3>;  // rho, rho u, E

State to_cons(const Primitive& q, double g) {
    return {q.rho, q.rho * q.vel.x, q.p / (g - 1.0) + 0.5 * q.rho * q.vel.x * q.vel.x};
}

Primitive to_prim(const State& w, double g) {
    double u = w[1] / w[0];
    return {w[0], {u, 0.0}, (g - 1.0) * (w[2] - 0.5 * w[0] * u * u)};
}

State flux(const State& w, double g) {
    Primitive q = {w[0], {w[1] / w[0], 0.0}, (g - 1.0) * (w[2] - 0.5 * w[1] * w[1] / w[0])};
    return {w[1], w[1] * q.vel.x + q.p, q.vel.x * (w[2] + q.p)};
}

double minmod(double a, double b) {
    if (a * b <= 0.0) return 0.0;
    return std::abs(a) < std::abs(b) ? a : b;
}

State hllc(const State& wl, const State& wr, double g) {
    Primitive ql = to_prim(wl, g), qr = to_prim(wr, g);
    double cl = std::sqrt(g * std::max(ql.p, 1e-14) / ql.rho);
    double cr = std::sqrt(g * std::max(qr.p, 1e-14) / qr.rho);
    double sl = std::min(ql.vel.x - cl, qr.vel.x - cr);
    double sr = std::max(ql.vel.x + cl, qr.vel.x + cr);
    if (sl >= 0.0) return flux(wl, g);
    if (sr <= 0.0) return flux(wr, g);
    double num = qr.p - ql.p + ql.rho * ql.vel.x * (sl - ql.vel.x) -
                 qr.rho * qr.vel.x * (sr - qr.vel.x);
    double den = ql.rho * (sl - ql.vel.x) - qr.rho * (sr - qr.vel.x);
    double sm = num / den;
    auto star = [&](const State& w, const Primitive& q, double s) {
        double f = q.rho * (s - q.vel.x) / (s - sm);
        State ws;
        ws[0] = f;
        ws[1] = f * sm;
        ws[2] = f * (w[2] / q.rho + (sm - q.vel.x) * (sm + q.p / (q.rho * (s - q.vel.x))));
        return ws;
    };
    if (sm >= 0.0) {
        State ws = star(wl, ql, sl);
        State fl = flux(wl, g);
        return {fl[0] + sl * (ws[0] - wl[0]), fl[1] + sl * (ws[1] - wl[1]),
                fl[2] + sl * (ws[2] - wl[2])};
    }
    State ws = star(wr, qr, sr);
    State fr = flux(wr, g);
    return {fr[0] + sr * (ws[0] - wr[0]), fr[1] + sr * (ws[1] - wr[1]),
            fr[2] + sr * (ws[2] - wr[2])};
}

// geometric source of the radially symmetric 2D equations
State source(const State& w, double g, double r) {
    Primitive q = to_prim(w, g);
    return {-w[1] / r, -w[1] * q.vel.x / r, -q.vel.x * (w[2] + q.p) / r};
}

RadialSolution run_tvd(std::vector<State> w, double g, double r_max, double t_end) {
    const int n = static_cast<int>(w.size());
    const double dr = r_max / n;

    auto cell_r = [dr](int i) { return (i + 0.5) * dr; };

    double t = 0.0;
    while (t < t_end * (1.0 - 1e-14)) {
        double smax = 1e-12;
        for (int i = 0; i < n; ++i) {
            Primitive q = to_prim(w[i], g);
            smax = std::max(smax, std::abs(q.vel.x) + std::sqrt(g * std::max(q.p, 1e-14) / q.rho));
        }
        double dt = std::min(0.45 * dr / smax, t_end - t);

        // limited slopes and half-step predictor (with source)
        std::vector<State> wl(n), wr(n);
        for (int i = 0; i < n; ++i) {
            State slope{};
            for (int k = 0; k < 3; ++k) {
                double dm = i > 0 ? w[i][k] - w[i - 1][k] : 0.0;
                double dp = i + 1 < n ? w[i + 1][k] - w[i][k] : 0.0;
                slope[k] = minmod(dm, dp);
            }
            State wL, wR;
            for (int k = 0; k < 3; ++k) {
                wL[k] = w[i][k] - 0.5 * slope[k];
                wR[k] = w[i][k] + 0.5 * slope[k];
            }
            State fL = flux(wL, g), fR = flux(wR, g);
            State s = source(w[i], g, cell_r(i));
            for (int k = 0; k < 3; ++k) {
                double dw = 0.5 * dt * (-(fR[k] - fL[k]) / dr + s[k]);
                wl[i][k] = wL[k] + dw;
                wr[i][k] = wR[k] + dw;
            }
        }

        std::vector<State> fnum(n + 1);
        fnum[0] = {0.0, to_prim(wl[0], g).p, 0.0};  // symmetry axis: pressure only
        for (int i = 1; i < n; ++i) fnum[i] = hllc(wr[i - 1], wl[i], g);
        fnum[n] = flux(wr[n - 1], g);  // outflow

        for (int i = 0; i < n; ++i) {
            State mid = w[i];
            State s0 = source(mid, g, cell_r(i));
            for (int k = 0; k < 3; ++k) mid[k] += 0.5 * dt * s0[k];
            State s = source(mid, g, cell_r(i));
            for (int k = 0; k < 3; ++k)
                w[i][k] += dt * (-(fnum[i + 1][k] - fnum[i][k]) / dr + s[k]);
        }
        t += dt;
    }

    RadialSolution sol;
    sol.r.resize(n);
    sol.rho.resize(n);
    sol.u.resize(n);
    sol.p.resize(n);
    for (int i = 0; i < n; ++i) {
        sol.r[i] = cell_r(i);
        Primitive q = to_prim(w[i], g);
        sol.rho[i] = q.rho;
        sol.u[i] = q.vel.x;
        sol.p[i] = q.p;
    }
    return sol;
}

} // namespace

double RadialSolution::interp(const std::vector<double>& f, double rq) const {
    if (rq <= r.front()) return f.front();
    if (rq >= r.back()) return f.back();
    auto it = std::lower_bound(r.begin(), r.end(), rq);
    size_t i = it - r.begin();
    double w = (rq - r[i - 1]) / (r[i] - r[i - 1]);
    return (1.0 - w) * f[i - 1] + w * f[i];
}

RadialSolution radial_explosion_reference(const Primitive& inner, const Primitive& outer,
                                          double r_jump, double gamma, int n_cells, double r_max,
                                          double t_end) {
    std::vector<State> w(n_cells);
    const double dr = r_max / n_cells;
    for (int i = 0; i < n_cells; ++i)
        w[i] = to_cons((i + 0.5) * dr <= r_jump ? inner : outer, gamma);
    return run_tvd(std::move(w), gamma, r_max, t_end);
}

RadialSolution radial_reference_custom(const std::vector<Primitive>& init, double gamma,
                                       double r_max, double t_end) {
    std::vector<State> w(init.size());
    for (size_t i = 0; i < init.size(); ++i) w[i] = to_cons(init[i], gamma);
    return run_tvd(std::move(w), gamma, r_max, t_end);
}

} // namespace allmach
