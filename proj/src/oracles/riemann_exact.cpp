#include "allmach/oracles/riemann_exact.hpp"

#include <cmath>
#include <string>

namespace allmach {

namespace {

struct SideFn {
    double rho, p, c, A, B, g;

    SideFn(const Primitive& q, double gamma) : rho(q.rho), p(q.p), g(gamma) {
        c = std::sqrt(g * p / rho);
        A = 2.0 / ((g + 1.0) * rho);
        B = (g - 1.0) / (g + 1.0) * p;
    }
    double f(double ps) const {
        if (ps > p) return (ps - p) * std::sqrt(A / (ps + B));
        return 2.0 * c / (g - 1.0) * (std::pow(ps / p, (g - 1.0) / (2.0 * g)) - 1.0);
    }
    double df(double ps) const {
        if (ps > p) {
            double sq = std::sqrt(A / (ps + B));
            return sq * (1.0 - 0.5 * (ps - p) / (ps + B));
        }
        return 1.0 / (rho * c) * std::pow(ps / p, -(g + 1.0) / (2.0 * g));
    }
};

} // namespace

RiemannSolution exact_riemann(const Primitive& left, const Primitive& right, double gamma) {
    RiemannSolution sol;
    sol.left = left;
    sol.right = right;
    sol.gamma = gamma;

    const double du = right.vel.x - left.vel.x;
    SideFn L(left, gamma), R(right, gamma);
    if (2.0 * L.c / (gamma - 1.0) + 2.0 * R.c / (gamma - 1.0) <= du)
        throw SolverError("Riemann data generates vacuum (du = " + std::to_string(du) + ")");

    // two-rarefaction guess, clipped away from zero
    double pg = std::pow((L.c + R.c - 0.5 * (gamma - 1.0) * du) /
                             (L.c / std::pow(left.p, (gamma - 1.0) / (2.0 * gamma)) +
                              R.c / std::pow(right.p, (gamma - 1.0) / (2.0 * gamma))),
                         2.0 * gamma / (gamma - 1.0));
    double p = std::max(pg, 1e-14 * std::max(left.p, right.p));

    for (int it = 0; it < 200; ++it) {
        double fv = L.f(p) + R.f(p) + du;
        double dv = L.df(p) + R.df(p);
        double pn = p - fv / dv;
        if (pn <= 0.0) pn = 0.5 * p;
        if (std::abs(pn - p) <= 1e-12 * std::max(1.0, p)) {
            p = pn;
            break;
        }
        p = pn;
    }
    sol.p_star = p;
    sol.u_star = 0.5 * (left.vel.x + right.vel.x) + 0.5 * (R.f(p) - L.f(p));
    sol.left_wave = p > left.p ? RiemannSolution::Wave::Shock : RiemannSolution::Wave::Rarefaction;
    sol.right_wave = p > right.p ? RiemannSolution::Wave::Shock : RiemannSolution::Wave::Rarefaction;
    return sol;
}

double RiemannSolution::left_head() const {
    double c = std::sqrt(gamma * left.p / left.rho);
    if (left_wave == Wave::Shock)
        return left.vel.x -
               c * std::sqrt((gamma + 1.0) / (2.0 * gamma) * p_star / left.p +
                             (gamma - 1.0) / (2.0 * gamma));
    return left.vel.x - c;
}

double RiemannSolution::left_tail() const {
    double c = std::sqrt(gamma * left.p / left.rho);
    if (left_wave == Wave::Shock) return left_head();
    double c_star = c * std::pow(p_star / left.p, (gamma - 1.0) / (2.0 * gamma));
    return u_star - c_star;
}

double RiemannSolution::right_head() const {
    double c = std::sqrt(gamma * right.p / right.rho);
    if (right_wave == Wave::Shock)
        return right.vel.x +
               c * std::sqrt((gamma + 1.0) / (2.0 * gamma) * p_star / right.p +
                             (gamma - 1.0) / (2.0 * gamma));
    return right.vel.x + c;
}

double RiemannSolution::right_tail() const {
    double c = std::sqrt(gamma * right.p / right.rho);
    if (right_wave == Wave::Shock) return right_head();
    double c_star = c * std::pow(p_star / right.p, (gamma - 1.0) / (2.0 * gamma));
    return u_star + c_star;
}

Primitive RiemannSolution::sample(double xi) const {
    const double g = gamma;
    if (xi <= u_star) {
        const double c = std::sqrt(g * left.p / left.rho);
        if (left_wave == Wave::Shock) {
            double S = left_head();
            if (xi <= S) return left;
            double pr = p_star / left.p;
            double rho = left.rho * (pr + (g - 1.0) / (g + 1.0)) /
                         ((g - 1.0) / (g + 1.0) * pr + 1.0);
            return {rho, {u_star, 0.0}, p_star};
        }
        if (xi <= left.vel.x - c) return left;
        double c_star = c * std::pow(p_star / left.p, (g - 1.0) / (2.0 * g));
        if (xi >= u_star - c_star)
            return {left.rho * std::pow(p_star / left.p, 1.0 / g), {u_star, 0.0}, p_star};
        // inside the fan
        double u = 2.0 / (g + 1.0) * (c + (g - 1.0) / 2.0 * left.vel.x + xi);
        double cf = 2.0 / (g + 1.0) * (c + (g - 1.0) / 2.0 * (left.vel.x - xi));
        double rho = left.rho * std::pow(cf / c, 2.0 / (g - 1.0));
        double p = left.p * std::pow(cf / c, 2.0 * g / (g - 1.0));
        return {rho, {u, 0.0}, p};
    }
    const double c = std::sqrt(g * right.p / right.rho);
    if (right_wave == Wave::Shock) {
        double S = right_head();
        if (xi >= S) return right;
        double pr = p_star / right.p;
        double rho = right.rho * (pr + (g - 1.0) / (g + 1.0)) /
                     ((g - 1.0) / (g + 1.0) * pr + 1.0);
        return {rho, {u_star, 0.0}, p_star};
    }
    if (xi >= right.vel.x + c) return right;
    double c_star = c * std::pow(p_star / right.p, (g - 1.0) / (2.0 * g));
    if (xi <= u_star + c_star)
        return {right.rho * std::pow(p_star / right.p, 1.0 / g), {u_star, 0.0}, p_star};
    double u = 2.0 / (g + 1.0) * (-c + (g - 1.0) / 2.0 * right.vel.x + xi);
    double cf = 2.0 / (g + 1.0) * (c - (g - 1.0) / 2.0 * (right.vel.x - xi));
    double rho = right.rho * std::pow(cf / c, 2.0 / (g - 1.0));
    double p = right.p * std::pow(cf / c, 2.0 * g / (g - 1.0));
    return {rho, {u, 0.0}, p};
}

} // namespace allmach
