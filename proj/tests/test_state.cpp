#include <random>

#include "allmach/state.hpp"
#include "doctest.h"

using namespace allmach;

TEST_CASE("conversions between primitive and conserved states") {
    FluidParams par;
    par.gamma = 1.4;

    Conserved w = prim_to_cons({1.0, {0.0, 0.0}, 1.0}, par);
    CHECK(w.E == doctest::Approx(2.5).epsilon(1e-14));
    CHECK(w.rho == 1.0);
    CHECK(w.mom.norm() == 0.0);

    // direct substitution: rho=2, u=(3,4), p=0.4
    w = prim_to_cons({2.0, {3.0, 4.0}, 0.4}, par);
    CHECK(w.E == doctest::Approx(1.0 + 25.0).epsilon(1e-14));

    Primitive q = cons_to_prim({1.0, {0.0, 0.0}, 2.5}, par);
    CHECK(q.p == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(q.vel.norm() == 0.0);

    CHECK_THROWS_AS(cons_to_prim({1.0, {0.0, 0.0}, -1.0}, par), SolverError);
    CHECK_THROWS_AS(cons_to_prim({-0.5, {0.0, 0.0}, 1.0}, par), SolverError);
}

TEST_CASE("round trip is the identity on random valid states") {
    FluidParams par;
    par.gamma = 1.4;
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> pos(0.1, 10.0), vel(-5.0, 5.0);
    for (int k = 0; k < 500; ++k) {
        Primitive q{pos(rng), {vel(rng), vel(rng)}, pos(rng)};
        Primitive r = cons_to_prim(prim_to_cons(q, par), par);
        CHECK(r.rho == doctest::Approx(q.rho).epsilon(1e-13));
        CHECK(r.p == doctest::Approx(q.p).epsilon(1e-13));
        CHECK(r.vel.x == doctest::Approx(q.vel.x).epsilon(1e-13));
        CHECK(r.vel.y == doctest::Approx(q.vel.y).epsilon(1e-13));
    }
}

TEST_CASE("sound speed") {
    FluidParams par;
    par.gamma = 1.4;
    CHECK(sound_speed({1.0, {0.0, 0.0}, 1.0 / 1.4}, par) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(sound_speed({1.0, {0.0, 0.0}, 1.0}, par) ==
          doctest::Approx(std::sqrt(1.4)).epsilon(1e-14));
    // invariant under joint scaling of p and rho
    CHECK(sound_speed({4.0, {0.0, 0.0}, 4.0}, par) ==
          doctest::Approx(sound_speed({1.0, {0.0, 0.0}, 1.0}, par)).epsilon(1e-14));
}

TEST_CASE("enthalpy and temperature closures") {
    FluidParams par;
    par.gamma = 1.4;
    par.c_v = 1.0;  // c_p = 1.4, R = 0.4
    CHECK(enthalpy({1.0, {0.0, 0.0}, 1.0}, par) == doctest::Approx(3.5).epsilon(1e-14));
    CHECK(enthalpy({1.0, {0.0, 0.0}, 1.0 / 1.4}, par) == doctest::Approx(2.5).epsilon(1e-14));

    Primitive q{2.0, {1.0, 0.0}, 3.0};
    double h = enthalpy(q, par);
    CHECK(h * q.rho * (par.gamma - 1.0) / par.gamma == doctest::Approx(q.p).epsilon(1e-14));

    CHECK(temperature({1.0, {0.0, 0.0}, 1.0}, par) == doctest::Approx(2.5).epsilon(1e-14));
    double theta = temperature(q, par);
    CHECK(q.rho * par.R() * theta == doctest::Approx(q.p).epsilon(1e-14));
    // gamma / heat-capacity consistency
    CHECK(par.R() == doctest::Approx(par.c_p() * (par.gamma - 1.0) / par.gamma).epsilon(1e-14));
}

TEST_CASE("parameter validation") {
    FluidParams par;
    par.gamma = 0.9;
    CHECK_THROWS_AS(par.validate(), SolverError);
    par.gamma = 1.4;
    par.mu = -1.0;
    CHECK_THROWS_AS(par.validate(), SolverError);
}
