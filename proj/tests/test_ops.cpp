/// @file test_ops.cpp
/// @brief Operators, norms, mean normalization and the discrete identities.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "slipflow/ns3d.hpp"
#include "slipflow/ops.hpp"
#include "slipflow/random_fields.hpp"
#include "test_support.hpp"

using namespace slipflow;

namespace {

DomainSpec pi_box(int n, int n3 = 8) {
    return DomainSpec{M_PI, M_PI, M_PI / 2.0, n, n, n3, 1.0, 1.0};
}

Velocity2D taylor_green(const Domain& d) {
    Velocity2D w(d);
    w.psi.at(1, 1) = -1.0;
    return w;
}

double rel_l2_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += (a[i] - b[i]) * (a[i] - b[i]);
        den += b[i] * b[i];
    }
    return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

}  // namespace

TEST_CASE("scalar curl of the Taylor-Green velocity") {
    Domain d(pi_box(16));
    const Velocity2D w = taylor_green(d);
    // w = (sin x1 cos x2, -cos x1 sin x2)
    const VectorField2 v = velocity_components(w);
    CHECK(v[0].at(1, 1) == doctest::Approx(1.0));
    CHECK(v[1].at(1, 1) == doctest::Approx(-1.0));
    const Vorticity2D om = rot2(w);
    CHECK(om.f.at(1, 1) == doctest::Approx(2.0));
    // pointwise checks against the analytic fields
    for (double x : {0.3, 1.7}) {
        for (double y : {0.5, 2.9}) {
            CHECK(eval_at(v[0], x, y) ==
                  doctest::Approx(std::sin(x) * std::cos(y)).epsilon(1e-13));
            CHECK(eval_at(v[1], x, y) ==
                  doctest::Approx(-std::cos(x) * std::sin(y)).epsilon(1e-13));
            CHECK(eval_at(om.f, x, y) ==
                  doctest::Approx(2.0 * std::sin(x) * std::sin(y))
                      .epsilon(1e-13));
        }
    }
    // zero in, zero out
    Velocity2D z(d);
    for (double c : rot2(z).f.c) CHECK(c == 0.0);
}

TEST_CASE("tilde-rot and the Laplacian identity") {
    Domain d(pi_box(16));
    ScalarField2 phi(d, Domain::stream_parity);
    phi.at(1, 1) = 1.0;
    const VectorField2 t = tilde_rot(phi);
    // (phi_y, -phi_x) = (sin x cos y, -cos x sin y)
    CHECK(t[0].at(1, 1) == doctest::Approx(1.0));
    CHECK(t[1].at(1, 1) == doctest::Approx(-1.0));
    CHECK(t[0].parity == Parity2{Parity::Sin, Parity::Cos});
    CHECK(t[1].parity == Parity2{Parity::Cos, Parity::Sin});

    // tilde_rot(rot2 w) = -Lap w for random streamfunctions
    for (unsigned seed : {1u, 2u, 3u}) {
        Velocity2D w = random_stream(d, seed);
        const VectorField2 lhs = tilde_rot(rot2(w).f);
        const VectorField2 v = velocity_components(w);
        for (int c = 0; c < 2; ++c) {
            ScalarField2 rhs = laplacian(v[c]);
            for (double& x : rhs.c) x = -x;
            CHECK(rel_l2_diff(lhs[c].c, rhs.c) <= 1e-13);
        }
    }
    // zero case
    ScalarField2 z(d, Domain::stream_parity);
    for (const auto& comp : tilde_rot(z))
        for (double c : comp.c) CHECK(c == 0.0);
}

TEST_CASE("3D curl and divergence") {
    Domain d(pi_box(12, 12));
    // analytic divergence-free mode family
    Velocity3D u(d);
    u.u[0].at(1, 1, 1) = 1.0;
    u.u[1].at(1, 1, 1) = -1.0;
    const ScalarField3 div = divergence3(u.u);
    for (double c : div.c) CHECK(std::abs(c) <= 1e-15);

    // curl-curl equals minus Laplacian on projected random fields
    for (unsigned seed : {4u, 5u}) {
        Velocity3D r = random_divfree3(d, seed);
        const VectorField3 rr = rot3(rot3(r.u));
        double num = 0.0, den = 0.0;
        for (int c = 0; c < 3; ++c) {
            ScalarField3 lap = laplacian(r.u[c]);
            for (std::size_t i = 0; i < lap.c.size(); ++i) {
                const double diff = rr[c].c[i] + lap.c[i];
                num += diff * diff;
                den += lap.c[i] * lap.c[i];
            }
        }
        CHECK(std::sqrt(num / den) <= 1e-12);
    }

    // zero case
    Velocity3D z(d);
    for (const auto& comp : rot3(z.u))
        for (double c : comp.c) CHECK(c == 0.0);
}

TEST_CASE("advection: eigenfunction, constants, skew-symmetry") {
    Domain d(pi_box(32));
    const Velocity2D w = taylor_green(d);
    const VectorField2 v = velocity_components(w);
    const Vorticity2D om = rot2(w);

    // Taylor-Green vorticity is an eigenfunction: w . grad om vanishes
    const ScalarField2 adv = advect(v, om.f);
    CHECK(std::sqrt(l2sq(adv)) <= 1e-12);

    // constant field advects to zero
    ScalarField2 q(d, {Parity::Cos, Parity::Cos});
    q.at(0, 0) = 3.0;
    const ScalarField2 advq = advect(v, q);
    for (double c : advq.c) CHECK(c == 0.0);

    // quadrature skew-symmetry for random divergence-free advecting fields
    for (unsigned seed : {10u, 11u, 12u}) {
        Velocity2D a = random_stream(d, seed, 10);
        const VectorField2 av = velocity_components(a);
        ScalarField2 qq = random_scalar2(d, Domain::stream_parity, seed + 50,
                                         10);
        const std::vector<double> a1 = to_values_os(av[0]);
        const std::vector<double> a2 = to_values_os(av[1]);
        const std::vector<double> q1 = to_values_os(derivative(qq, 0));
        const std::vector<double> q2 = to_values_os(derivative(qq, 1));
        const std::vector<double> qv = to_values_os(qq);
        double integral = 0.0, scale = 0.0;
        for (std::size_t i = 0; i < qv.size(); ++i) {
            const double flux = a1[i] * q1[i] + a2[i] * q2[i];
            integral += flux * qv[i];
            scale += std::abs(flux * qv[i]);
        }
        integral *= d.cell2(true);
        scale *= d.cell2(true);
        CHECK(std::abs(integral) <= 1e-11 * std::max(scale, 1e-30));

        // spectral version against the dealiased operator
        dealias2(d, qq.c);
        const ScalarField2 advd = advect(av, qq);
        double ip = 0.0;
        for (int m1 = 0; m1 < qq.n1(); ++m1)
            for (int m2 = 0; m2 < qq.n2(); ++m2)
                ip += advd.at(m1, m2) * qq.at(m1, m2) *
                      d.mode_weight(0, Parity::Sin, m1) *
                      d.mode_weight(1, Parity::Sin, m2);
        CHECK(std::abs(ip) <= 1e-11 * std::max(scale, 1e-30));
    }

    // parity mismatch raises
    VectorField2 bad;
    bad[0] = ScalarField2(d, {Parity::Cos, Parity::Sin});
    bad[1] = ScalarField2(d, {Parity::Sin, Parity::Cos});
    ScalarField2 qs = random_scalar2(d, Domain::stream_parity, 1);
    CHECK_THROWS_AS(advect(bad, qs), std::invalid_argument);
}

TEST_CASE("3D skew-symmetry of advection by quadrature") {
    Domain d(pi_box(12, 12));
    for (unsigned seed : {21u, 22u}) {
        const Velocity3D a = random_divfree3(d, seed, 4);
        ScalarField3 q = random_scalar3(
            d, {Parity::Sin, Parity::Sin, Parity::Sin}, seed + 5, 4);
        std::array<std::vector<double>, 3> av, dq;
        for (int i = 0; i < 3; ++i) {
            av[i] = to_values_os(a.u[i]);
            dq[i] = to_values_os(derivative(q, i));
        }
        const std::vector<double> qv = to_values_os(q);
        double integral = 0.0, scale = 0.0;
        for (std::size_t i = 0; i < qv.size(); ++i) {
            const double flux =
                av[0][i] * dq[0][i] + av[1][i] * dq[1][i] +
                av[2][i] * dq[2][i];
            integral += flux * qv[i];
            scale += std::abs(flux * qv[i]);
        }
        CHECK(std::abs(integral) <= 1e-11 * std::max(scale, 1e-30));
    }
}

TEST_CASE("norm values") {
    Domain d(pi_box(16));
    const Velocity2D w = taylor_green(d);
    const VectorField2 v = velocity_components(w);
    CHECK(l2sq(v) == doctest::Approx(M_PI * M_PI / 2.0).epsilon(1e-13));

    ScalarField2 s(d, Domain::stream_parity);
    s.at(1, 1) = 1.0;
    CHECK(h1sq(s) ==
          doctest::Approx(3.0 * M_PI * M_PI / 4.0).epsilon(1e-13));
    CHECK(l2sq(s) == doctest::Approx(M_PI * M_PI / 4.0).epsilon(1e-13));

    // L4 of sin x sin y: (int sin^4)^2 = (3 pi / 8)^2
    const double l4 = lsigma_norm(s, 4.0);
    CHECK(std::pow(l4, 4.0) ==
          doctest::Approx(std::pow(3.0 * M_PI / 8.0, 2)).epsilon(1e-12));

    // sup-norm approximation on the oversampled grid
    CHECK(linf_norm(s) == doctest::Approx(1.0).epsilon(2e-3));

    // all kinds vanish on the zero field
    VectorField2 z = make_velocity2(d);
    for (NormKind k : {NormKind::L2, NormKind::H1, NormKind::H2,
                       NormKind::Linf}) {
        CHECK(norm(z, k) == 0.0);
    }
    CHECK(norm(z, NormKind::Lsigma, 2.5) == 0.0);
    CHECK(norm(z, NormKind::W1sigma, 2.5) == 0.0);

    CHECK_THROWS_AS(lsigma_norm(v, 0.5), std::invalid_argument);

    // H2 against explicit derivative sums (each multi-index once)
    Velocity2D r = random_stream(d, 71, 6);
    const VectorField2 rv = velocity_components(r);
    double want = l2sq(rv);
    for (int i = 0; i < 2; ++i) {
        want += l2sq(derivative(rv[i], 0)) + l2sq(derivative(rv[i], 1));
        want += l2sq(derivative(derivative(rv[i], 0), 0));
        want += l2sq(derivative(derivative(rv[i], 0), 1));
        want += l2sq(derivative(derivative(rv[i], 1), 1));
    }
    CHECK(h2sq(rv) == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("mean normalization") {
    Domain d(pi_box(16));
    // constant field (1, 0)
    VectorField2 h;
    h[0] = ScalarField2(d, {Parity::Cos, Parity::Cos});
    h[1] = ScalarField2(d, {Parity::Cos, Parity::Cos});
    h[0].at(0, 0) = 1.0;
    const MeanNormalized2 n1 = mean_normalize(h);
    CHECK(n1.mean[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(n1.mean[1] == 0.0);
    CHECK(l2sq(n1) <= 1e-13);

    // h = (sin x1, 0): mean 2/pi, normalized L2^2 = pi^2/2 - 4
    VectorField2 g = make_velocity2(d);
    g[0].at(1, 0) = 1.0;
    const MeanNormalized2 n2 = mean_normalize(g);
    CHECK(n2.mean[0] == doctest::Approx(2.0 / M_PI).epsilon(1e-14));
    CHECK(l2sq(n2) ==
          doctest::Approx(M_PI * M_PI / 2.0 - 4.0).epsilon(1e-12));

    // the normalized field integrates to ~0: int sin x1 over (0,pi)^2 is
    // exactly 2 pi, so int hbar = 2 pi - mean |Omega|
    const double hbar_integral = 2.0 * M_PI - n2.mean[0] * M_PI * M_PI;
    CHECK(std::abs(hbar_integral) <= 1e-13);

    // already mean-zero fields are untouched
    VectorField2 m = make_velocity2(d);
    m[0].at(2, 1) = 0.7;  // sin(2x) integrates to zero
    const MeanNormalized2 n3 = mean_normalize(m);
    CHECK(n3.mean[0] == 0.0);
    CHECK(n3.mean[1] == 0.0);
    CHECK(l2sq(n3) == doctest::Approx(l2sq(m)).epsilon(1e-15));

    // 3D means
    Velocity3D u(d);
    u.u[0].at(1, 0, 0) = 1.0;  // sin x1: mean 2/pi
    const MeanNormalized3 n4 = mean_normalize(u.u);
    CHECK(n4.mean[0] == doctest::Approx(2.0 / M_PI).epsilon(1e-14));
}

TEST_CASE("nonlinear orthogonality integral") {
    Domain d(pi_box(32));
    // Taylor-Green
    const Velocity2D tg = taylor_green(d);
    {
        const VectorField2 v = velocity_components(tg);
        const double scale =
            h1sq(v) * std::sqrt(l2sq(laplacian(v[0])) + l2sq(laplacian(v[1])));
        CHECK(std::abs(nonlinear_orthogonality(tg)) <= 1e-11 * scale);
    }
    // zero
    Velocity2D z(d);
    CHECK(nonlinear_orthogonality(z) == 0.0);
    // random 8-mode fields
    for (unsigned seed : {31u, 32u, 33u}) {
        Velocity2D w = random_stream(d, seed, 8);
        const VectorField2 v = velocity_components(w);
        const double scale =
            h1sq(v) * std::sqrt(l2sq(laplacian(v[0])) + l2sq(laplacian(v[1])));
        CHECK(std::abs(nonlinear_orthogonality(w)) <= 1e-10 * scale);
    }
}

TEST_CASE("Navier/slip relation on the boundary") {
    Domain d(pi_box(16));
    Velocity2D z(d);
    const SlipGap zero_gap = navier_slip_gap(z);
    CHECK(zero_gap.identity_residual == 0.0);
    CHECK(zero_gap.traction_max == 0.0);

    for (unsigned seed : {41u, 42u}) {
        Velocity2D w = random_stream(d, seed, 8);
        const double scale = std::sqrt(h2sq(velocity_components(w))) + 1.0;
        const SlipGap gap = navier_slip_gap(w);
        CHECK(gap.identity_residual <= 1e-11 * scale);
        // Navier conditions imply slip conditions on the flat boundary
        CHECK(gap.traction_max <= 1e-11 * scale);
    }
}
