/// @file test_ns2d.cpp
/// @brief Base-flow solver: initialization, stepping, decay, logging.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "slipflow/ns2d.hpp"
#include "slipflow/ops.hpp"
#include "test_support.hpp"

using namespace slipflow;

namespace {

DomainSpec pi_box(int n) {
    return DomainSpec{M_PI, M_PI, M_PI / 2.0, n, n, 8, 1.0, 1.0};
}

ForcingSpec no_force() { return ForcingSpec{}; }

double energy(const State2D& s) {
    Velocity2D w;
    w.psi = s.psi;
    return l2sq(velocity_components(w));
}

}  // namespace

TEST_CASE("initial data") {
    Domain d(pi_box(32));

    InitialData2D tg;
    tg.kind = InitialData2D::Kind::TaylorGreen;
    State2D s = init_2d(d, tg);
    CHECK(s.psi.at(1, 1) == doctest::Approx(-1.0));
    CHECK(energy(s) == doctest::Approx(M_PI * M_PI / 2.0).epsilon(1e-13));
    CHECK(s.omega.at(1, 1) == doctest::Approx(2.0));

    InitialData2D zero;
    State2D z = init_2d(d, zero);
    CHECK(energy(z) == 0.0);

    InitialData2D rnd;
    rnd.kind = InitialData2D::Kind::Random;
    rnd.seed = 7;
    rnd.energy = 1.0;
    State2D r = init_2d(d, rnd);
    CHECK(energy(r) == doctest::Approx(1.0).epsilon(1e-12));

    InitialData2D modes;
    modes.kind = InitialData2D::Kind::Modes;
    modes.modes = {{2, 3, 0.5}};
    State2D m = init_2d(d, modes);
    CHECK(m.psi.at(2, 3) == doctest::Approx(0.5));

    modes.modes = {{40, 1, 1.0}};
    CHECK_THROWS_AS(init_2d(d, modes), std::invalid_argument);
}

TEST_CASE("single-mode step is the exact diffusion factor") {
    Domain d(pi_box(16));
    InitialData2D tg;
    tg.kind = InitialData2D::Kind::TaylorGreen;
    const State2D s0 = init_2d(d, tg);
    const double dt = 1e-2;
    const State2D s1 = step_2d(d, s0, no_force(), dt);
    const double factor = s1.omega.at(1, 1) / s0.omega.at(1, 1);
    CHECK(factor == doctest::Approx(std::exp(-2.0 * dt)).epsilon(1e-13));

    CHECK_THROWS_AS(step_2d(d, s0, no_force(), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(step_2d(d, s0, no_force(), -1.0), std::invalid_argument);
    // CFL guard
    CHECK_THROWS_AS(step_2d(d, s0, no_force(), 10.0), std::runtime_error);
}

TEST_CASE("blow-up guard") {
    Domain d(pi_box(16));
    InitialData2D tg;
    tg.kind = InitialData2D::Kind::TaylorGreen;
    State2D s = init_2d(d, tg);
    s.omega.at(3, 3) = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(step_2d(d, s, no_force(), 1e-3), std::runtime_error);
}

TEST_CASE("Taylor-Green decays at the Stokes rate") {
    Domain d(pi_box(32));
    InitialData2D tg;
    tg.kind = InitialData2D::Kind::TaylorGreen;
    State2D s = init_2d(d, tg);
    const double e0 = std::sqrt(energy(s));
    const double dt = 1e-3;
    for (int i = 1; i <= 100; ++i) {
        s = step_2d(d, s, no_force(), dt);
        s.t = i * dt;
    }
    const double expect = e0 * std::exp(-2.0 * 0.1);
    CHECK(std::abs(std::sqrt(energy(s)) - expect) / expect <= 1e-10);
}

TEST_CASE("vorticity advection is energy neutral") {
    Domain d(pi_box(32));
    InitialData2D rnd;
    rnd.kind = InitialData2D::Kind::Random;
    rnd.seed = 3;
    rnd.energy = 1.0;
    rnd.max_mode = 10;
    const State2D s = init_2d(d, rnd);
    Velocity2D w;
    w.psi = s.psi;
    const ScalarField2 adv = advect(velocity_components(w), s.omega);
    // d/dt ||w||^2 from the advective term: sum of adv * psi
    double flux = 0.0, scale = 0.0;
    for (int m1 = 0; m1 < s.psi.n1(); ++m1)
        for (int m2 = 0; m2 < s.psi.n2(); ++m2) {
            const double wgt = d.mode_weight(0, Parity::Sin, m1) *
                               d.mode_weight(1, Parity::Sin, m2);
            flux += adv.at(m1, m2) * s.psi.at(m1, m2) * wgt;
            scale +=
                std::abs(adv.at(m1, m2) * s.psi.at(m1, m2)) * wgt;
        }
    CHECK(std::abs(flux) <= 1e-11 * std::max(scale, 1e-30));
}

TEST_CASE("step is third-order accurate") {
    Domain d(pi_box(16));
    InitialData2D rnd;
    rnd.kind = InitialData2D::Kind::Random;
    rnd.seed = 5;
    rnd.energy = 1.0;
    rnd.max_mode = 5;
    const State2D s0 = init_2d(d, rnd);
    ForcingSpec h;
    h.entries = {{0, {1, 2, 0}, 0.4, ForcingProfile{}}};

    auto advance = [&](double dt, int n) {
        State2D s = s0;
        for (int i = 1; i <= n; ++i) {
            s = step_2d(d, s, h, dt);
            s.t = i * dt;
        }
        return s;
    };
    // compare one coarse step against two half steps; the defect shrinks
    // by ~2^4 per halving for a third-order one-step map
    auto defect = [&](double dt) {
        const State2D a = advance(dt, 1);
        const State2D b = advance(0.5 * dt, 2);
        double num = 0.0;
        for (std::size_t i = 0; i < a.omega.c.size(); ++i)
            num += (a.omega.c[i] - b.omega.c[i]) *
                   (a.omega.c[i] - b.omega.c[i]);
        return std::sqrt(num);
    };
    const double d1 = defect(2e-2);
    const double d2 = defect(1e-2);
    CHECK(d1 / d2 >= 8.0);   // at least ~2^3
    CHECK(d1 / d2 <= 40.0);  // and not wildly more than 2^5
}

TEST_CASE("run: monotone decay, zero data, endpoint sampling") {
    Domain d(pi_box(16));
    InitialData2D rnd;
    rnd.kind = InitialData2D::Kind::Random;
    rnd.seed = 11;
    rnd.energy = 0.5;
    rnd.max_mode = 6;
    RunOptions2D opt{2, 5e-3, 10, 4.0};
    const Run2DResult res = run_2d(d, init_2d(d, rnd), no_force(), opt);

    // energy strictly decreasing without forcing
    for (std::size_t i = 1; i < res.log.samples.size(); ++i)
        CHECK(res.log.samples[i].E < res.log.samples[i - 1].E);

    // endpoint samples are present at t = 0, T, 2T
    int endpoints = 0;
    for (const Sample2D& s : res.log.samples) {
        const double kf = s.t / d.spec().T;
        if (std::abs(kf - std::round(kf)) < 1e-12) ++endpoints;
    }
    CHECK(endpoints == 3);

    // zero data stays zero
    InitialData2D zero;
    const Run2DResult zres = run_2d(d, init_2d(d, zero), no_force(), opt);
    for (const Sample2D& s : zres.log.samples) {
        CHECK(s.E == 0.0);
        CHECK(s.enstrophy == 0.0);
    }
}

TEST_CASE("energy inequality holds along a forced trajectory") {
    Domain d(pi_box(16));
    InitialData2D tg;
    tg.kind = InitialData2D::Kind::TaylorGreen;
    ForcingSpec h;
    h.entries = {{0, {1, 2, 0}, 0.5, ForcingProfile{}}};
    RunOptions2D opt{2, 2e-3, 5, 4.0};
    const Run2DResult res = run_2d(d, init_2d(d, tg), h, opt);

    const double nu = d.spec().nu;
    const double c1 = 2.0 / 3.0;  // lambda1/(1+lambda1) on (0,pi)^2
    // within each interval: E(t)^2 <= int ||hbar||^2/(nu c1) + E(kT)^2 decay
    std::size_t anchor = 0;
    double force_int = 0.0;
    for (std::size_t i = 1; i < res.log.samples.size(); ++i) {
        const Sample2D& a = res.log.samples[i - 1];
        const Sample2D& b = res.log.samples[i];
        const double kf = a.t / d.spec().T;
        if (std::abs(kf - std::round(kf)) < 1e-12 && i - 1 != anchor) {
        }
        if (std::abs(kf - std::round(kf)) < 1e-12) {
            anchor = i - 1;
            force_int = 0.0;
        }
        force_int += 0.5 *
                     (a.force_L2 * a.force_L2 + b.force_L2 * b.force_L2) *
                     (b.t - a.t);
        const Sample2D& start = res.log.samples[anchor];
        const double rhs =
            force_int / (nu * c1) +
            start.E * start.E *
                std::exp(-nu * c1 * (b.t - start.t));
        CHECK(b.E * b.E <= rhs + 1e-8 * (start.E * start.E + 1.0));
    }
}

TEST_CASE("trajectory csv round trip") {
    Domain d(pi_box(16));
    InitialData2D rnd;
    rnd.kind = InitialData2D::Kind::Random;
    rnd.seed = 2;
    rnd.energy = 0.3;
    rnd.max_mode = 5;
    ForcingSpec h;
    h.entries = {{1, {2, 1, 0}, 0.2,
                  ForcingProfile{ForcingProfile::Type::Sinusoidal, 2.0, 0.4}}};
    RunOptions2D opt{1, 1e-2, 7, 4.0};
    const Run2DResult res = run_2d(d, init_2d(d, rnd), h, opt);

    std::ostringstream os;
    res.log.write_csv(os);
    std::istringstream is(os.str());
    const TrajectoryLog back =
        TrajectoryLog::read_csv(is, res.log.T, res.log.sigma);
    REQUIRE(back.samples.size() == res.log.samples.size());
    for (std::size_t i = 0; i < back.samples.size(); ++i) {
        CHECK(back.samples[i].t == res.log.samples[i].t);
        CHECK(back.samples[i].k == res.log.samples[i].k);
        CHECK(back.samples[i].E == res.log.samples[i].E);
        CHECK(back.samples[i].W1sigma == res.log.samples[i].W1sigma);
        CHECK(back.samples[i].force_Lsigma ==
              res.log.samples[i].force_Lsigma);
    }
}
