/// @file test_domain.cpp
/// @brief Geometry, transforms, dealiasing and wall-condition parities.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "slipflow/constants.hpp"
#include "slipflow/ops.hpp"
#include "slipflow/random_fields.hpp"
#include "test_support.hpp"

using namespace slipflow;

namespace {

DomainSpec pi_box(int n, int n3 = 8) {
    return DomainSpec{M_PI, M_PI, M_PI / 2.0, n, n, n3, 1.0, 1.0};
}

}  // namespace

TEST_CASE("wavenumber tables") {
    Domain d(pi_box(32));
    for (int m = 0; m < 32; ++m) {
        CHECK(d.wavenumber(0, m) == doctest::Approx(m).epsilon(1e-15));
        CHECK(d.wavenumber(1, m) == doctest::Approx(m).epsilon(1e-15));
    }
    // axial: pi m / (2a) with a = pi/2
    for (int m = 0; m < d.resolution(2); ++m)
        CHECK(d.wavenumber(2, m) == doctest::Approx(m).epsilon(1e-15));
    Domain wide(DomainSpec{2.0 * M_PI, M_PI, 1.0, 16, 16, 8, 0.5, 2.0});
    CHECK(wide.wavenumber(0, 3) == doctest::Approx(1.5));
    CHECK(wide.wavenumber(2, 1) == doctest::Approx(M_PI / 2.0));
}

TEST_CASE("spec validation") {
    DomainSpec s = pi_box(32);
    s.N1 = 7;
    CHECK_THROWS_WITH_AS(Domain{s}, doctest::Contains("even"),
                         std::invalid_argument);
    s = pi_box(32);
    s.N2 = 6;
    CHECK_THROWS_AS(Domain{s}, std::invalid_argument);
    s = pi_box(32);
    s.L1 = 0.0;
    CHECK_THROWS_AS(Domain{s}, std::invalid_argument);
    s = pi_box(32);
    s.nu = -1.0;
    CHECK_THROWS_AS(Domain{s}, std::invalid_argument);
    s = pi_box(32);
    s.T = 0.0;
    CHECK_THROWS_AS(Domain{s}, std::invalid_argument);
}

TEST_CASE("forward transform of a pure mode") {
    Domain d(pi_box(32));
    std::vector<double> vals(d.size2());
    for (int i = 0; i < 32; ++i)
        for (int j = 0; j < 32; ++j)
            vals[i * 32 + j] = std::sin(d.node(0, i)) * std::sin(d.node(1, j));
    ScalarField2 f = from_values(d, Domain::stream_parity, vals);
    for (int m1 = 0; m1 < 32; ++m1)
        for (int m2 = 0; m2 < 32; ++m2) {
            const double want = (m1 == 1 && m2 == 1) ? 1.0 : 0.0;
            CHECK(std::abs(f.at(m1, m2) - want) <= 1e-13);
        }
}

TEST_CASE("round trip on band-limited data") {
    Domain d(pi_box(16, 12));
    const Parity tab[2] = {Parity::Sin, Parity::Cos};
    // all four 2D parity combinations
    for (int pi1 = 0; pi1 < 2; ++pi1)
        for (int pi2 = 0; pi2 < 2; ++pi2) {
            ScalarField2 f(d, {tab[pi1], tab[pi2]});
            test::fill_random(f.c, 100 + pi1 * 2 + pi2);
            test::zero_dead_slots2(f);
            ScalarField2 g = from_values(d, f.parity, to_values(f));
            double num = 0.0, den = 0.0;
            for (std::size_t i = 0; i < f.c.size(); ++i) {
                num += (g.c[i] - f.c[i]) * (g.c[i] - f.c[i]);
                den += f.c[i] * f.c[i];
            }
            CHECK(std::sqrt(num / den) <= 1e-13);
        }
    // all eight 3D parity combinations
    for (int p = 0; p < 8; ++p) {
        ScalarField3 f(d, {tab[(p >> 2) & 1], tab[(p >> 1) & 1], tab[p & 1]});
        test::fill_random(f.c, 200 + p);
        test::zero_dead_slots3(f);
        ScalarField3 g = from_values(d, f.parity, to_values(f));
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < f.c.size(); ++i) {
            num += (g.c[i] - f.c[i]) * (g.c[i] - f.c[i]);
            den += f.c[i] * f.c[i];
        }
        CHECK(std::sqrt(num / den) <= 1e-13);
    }
}

TEST_CASE("oversampled backward/forward pair") {
    Domain d(pi_box(16));
    ScalarField2 f(d, {Parity::Sin, Parity::Cos});
    test::fill_random(f.c, 7);
    test::zero_dead_slots2(f);
    ScalarField2 g(d, f.parity);
    d.forward2_os(to_values_os(f), f.parity, g.c);
    for (std::size_t i = 0; i < f.c.size(); ++i)
        CHECK(std::abs(g.c[i] - f.c[i]) <= 1e-13);
    // values on the oversampled grid match direct evaluation
    const std::vector<double> v = to_values_os(f);
    for (int i : {0, 5, 17}) {
        for (int j : {3, 20}) {
            const double direct = eval_at(f, d.node_os(0, i), d.node_os(1, j));
            CHECK(v[std::size_t(i) * 32 + j] ==
                  doctest::Approx(direct).epsilon(1e-12));
        }
    }
}

TEST_CASE("parity mismatch is detected through leaked energy") {
    Domain d(pi_box(32));
    std::vector<double> vals(d.size2_os());
    for (int i = 0; i < 64; ++i)
        for (int j = 0; j < 64; ++j)
            vals[i * 64 + j] =
                std::cos(2.0 * d.node_os(0, i)) * std::sin(d.node_os(1, j));
    std::vector<double> coeffs(d.size2());
    CHECK_THROWS_AS(d.forward2_checked(vals, Domain::stream_parity, coeffs),
                    std::invalid_argument);
    // the correct parity passes
    CHECK_NOTHROW(
        d.forward2_checked(vals, {Parity::Cos, Parity::Sin}, coeffs));
}

TEST_CASE("dealias thresholds and idempotence") {
    Domain d(pi_box(32));
    CHECK(d.dealias_limit(0) == 21);  // floor(64/3)
    ScalarField2 f(d, Domain::stream_parity);
    f.at(25, 1) = 1.0;
    f.at(21, 1) = 2.0;
    f.at(1, 22) = 3.0;
    dealias2(d, f.c);
    CHECK(f.at(25, 1) == 0.0);
    CHECK(f.at(21, 1) == 2.0);
    CHECK(f.at(1, 22) == 0.0);

    ScalarField2 z(d, Domain::stream_parity);
    dealias2(d, z.c);
    for (double c : z.c) CHECK(c == 0.0);

    ScalarField2 r(d, {Parity::Cos, Parity::Cos});
    test::fill_random(r.c, 5);
    ScalarField2 once = r;
    dealias2(d, once.c);
    ScalarField2 twice = once;
    dealias2(d, twice.c);
    for (std::size_t i = 0; i < r.c.size(); ++i)
        CHECK(once.c[i] == twice.c[i]);

    ScalarField3 f3(d, Domain::velocity_parity3(0));
    test::fill_random(f3.c, 6);
    ScalarField3 g3 = f3;
    dealias3(d, g3.c);
    ScalarField3 h3 = g3;
    dealias3(d, h3.c);
    for (std::size_t i = 0; i < g3.c.size(); ++i)
        CHECK(g3.c[i] == h3.c[i]);
}

TEST_CASE("3D velocity basis satisfies the wall conditions exactly") {
    Domain d(pi_box(12, 10));
    Velocity3D u(d);
    for (int c = 0; c < 3; ++c) {
        test::fill_random(u.u[c].c, 300 + c);
        test::zero_dead_slots3(u.u[c]);
    }
    const VectorField3 r = rot3(u.u);

    double scale = 0.0;
    for (int c = 0; c < 3; ++c)
        for (double x : u.u[c].c) scale = std::max(scale, std::abs(x));

    // probe each face: normal velocity and tangential curl components
    auto probe = [&](int face_axis, double coord) {
        for (int i = 1; i < 7; ++i)
            for (int j = 1; j < 7; ++j) {
                double x[3];
                x[face_axis] = coord;
                const int o1 = (face_axis + 1) % 3, o2 = (face_axis + 2) % 3;
                x[o1] = d.length(o1) * i / 7.0;
                x[o2] = d.length(o2) * j / 7.0;
                CHECK(std::abs(eval_at(u.u[face_axis], x[0], x[1], x[2])) <=
                      1e-12 * scale);
                CHECK(std::abs(eval_at(r[o1], x[0], x[1], x[2])) <=
                      1e-12 * scale);
                CHECK(std::abs(eval_at(r[o2], x[0], x[1], x[2])) <=
                      1e-12 * scale);
            }
    };
    for (int ax = 0; ax < 3; ++ax) {
        probe(ax, 0.0);
        probe(ax, d.length(ax));
    }
}

TEST_CASE("2D streamfunction basis satisfies the wall conditions exactly") {
    Domain d(pi_box(16));
    Velocity2D w = random_stream(d, 42);
    const Vorticity2D om = rot2(w);
    const VectorField2 v = velocity_components(w);
    double scale = 1.0;
    for (double x : w.psi.c) scale = std::max(scale, std::abs(x));
    for (int j = 0; j < 20; ++j) {
        const double s = d.length(1) * (j + 0.5) / 20.0;
        for (double edge : {0.0, d.length(0)}) {
            CHECK(std::abs(eval_at(w.psi, edge, s)) <= 1e-12 * scale);
            CHECK(std::abs(eval_at(om.f, edge, s)) <= 1e-12 * scale);
            CHECK(std::abs(eval_at(v[0], edge, s)) <= 1e-12 * scale);
        }
        const double t = d.length(0) * (j + 0.5) / 20.0;
        for (double edge : {0.0, d.length(1)}) {
            CHECK(std::abs(eval_at(w.psi, t, edge)) <= 1e-12 * scale);
            CHECK(std::abs(eval_at(om.f, t, edge)) <= 1e-12 * scale);
            CHECK(std::abs(eval_at(v[1], t, edge)) <= 1e-12 * scale);
        }
    }
}

TEST_CASE("Parseval: spectral norms equal quadrature norms") {
    Domain d(pi_box(16));
    const Parity tab[2] = {Parity::Sin, Parity::Cos};
    for (int p = 0; p < 4; ++p) {
        ScalarField2 f(d, {tab[(p >> 1) & 1], tab[p & 1]});
        test::fill_random(f.c, 400 + p);
        test::zero_dead_slots2(f);
        const std::vector<double> v = to_values(f);
        double quad = 0.0;
        for (double x : v) quad += x * x;
        quad *= d.cell2();
        CHECK(l2sq(f) == doctest::Approx(quad).epsilon(1e-12));
    }
    ScalarField3 f(d, Domain::velocity_parity3(1));
    test::fill_random(f.c, 11);
    test::zero_dead_slots3(f);
    const std::vector<double> v = to_values(f);
    double quad = 0.0;
    for (double x : v) quad += x * x;
    quad *= d.cell3();
    CHECK(l2sq(f) == doctest::Approx(quad).epsilon(1e-12));
}
