/// @file test_constants.cpp
/// @brief Div-curl solver, closed-form constants and randomized sweeps.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "slipflow/constants.hpp"
#include "slipflow/ns3d.hpp"
#include "slipflow/ops.hpp"
#include "slipflow/random_fields.hpp"
#include "test_support.hpp"

using namespace slipflow;

namespace {

DomainSpec box(double L, double a, int n, int n3) {
    return DomainSpec{L, L, a, n, n, n3, 1.0, 1.0};
}

}  // namespace

TEST_CASE("div-curl solve on the unit-eigenvalue datum") {
    Domain d(box(M_PI, M_PI / 2.0, 16, 8));
    Vorticity2D b(d);
    b.f.at(1, 1) = 1.0;
    const Velocity2D w = solve_divcurl_2d(b);
    CHECK(w.psi.at(1, 1) == doctest::Approx(-0.5).epsilon(1e-15));
    const VectorField2 v = velocity_components(w);
    // w = (1/2 sin x cos y, -1/2 cos x sin y)
    CHECK(eval_at(v[0], 0.4, 1.1) ==
          doctest::Approx(0.5 * std::sin(0.4) * std::cos(1.1)).epsilon(1e-13));
    CHECK(eval_at(v[1], 0.4, 1.1) ==
          doctest::Approx(-0.5 * std::cos(0.4) * std::sin(1.1))
              .epsilon(1e-13));

    // zero datum
    Vorticity2D z(d);
    for (double c : solve_divcurl_2d(z).psi.c) CHECK(c == 0.0);

    // random round trip and the coercivity-derived bound
    const double c1 = coercivity_c1(d).value;
    for (unsigned seed : {3u, 4u, 5u}) {
        Vorticity2D r(d);
        r.f = random_scalar2(d, Domain::stream_parity, seed);
        const Velocity2D sol = solve_divcurl_2d(r);
        const Vorticity2D back = rot2(sol);
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < r.f.c.size(); ++i) {
            num += (back.f.c[i] - r.f.c[i]) * (back.f.c[i] - r.f.c[i]);
            den += r.f.c[i] * r.f.c[i];
        }
        CHECK(std::sqrt(num / den) <= 1e-13);
        CHECK(h1sq(velocity_components(sol)) <=
              (1.0 / c1) * l2sq(r.f) * (1.0 + 1e-12));
    }
}

TEST_CASE("Poincare constant") {
    Domain d(box(M_PI, M_PI / 2.0, 16, 8));
    const ConstantEstimate cp = poincare_constant(d);
    CHECK(cp.value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(cp.method == "closed-form-eigenvalue");

    Domain wide(box(2.0 * M_PI, M_PI, 16, 8));
    CHECK(poincare_constant(wide).value ==
          doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));

    // the Rayleigh sweep never undershoots the closed form
    const double swept = sweep_poincare_min(d, 1000, 99);
    CHECK(swept >= cp.value - 1e-12);

    // field-by-field inequality
    for (unsigned seed : {7u, 8u}) {
        const ScalarField2 u =
            random_scalar2(d, Domain::stream_parity, seed);
        CHECK(h1sq(u) - l2sq(u) >= cp.value * cp.value * l2sq(u) *
                                       (1.0 - 1e-12));
    }
}

TEST_CASE("2D coercivity constant") {
    Domain d(box(M_PI, M_PI / 2.0, 16, 8));
    CHECK(coercivity_c1(d).value ==
          doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    Domain wide(box(2.0 * M_PI, M_PI, 16, 8));
    CHECK(coercivity_c1(wide).value ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-14));

    // exhaustive mode enumeration confirms the minimizer is the (1,1) mode
    double best = 1e300;
    int best_m1 = 0, best_m2 = 0;
    for (int m1 = 1; m1 < 16; ++m1)
        for (int m2 = 1; m2 < 16; ++m2) {
            const double lam = double(m1) * m1 + double(m2) * m2;
            const double ratio = lam / (1.0 + lam);
            if (ratio < best) {
                best = ratio;
                best_m1 = m1;
                best_m2 = m2;
            }
        }
    CHECK(best_m1 == 1);
    CHECK(best_m2 == 1);
    CHECK(best == doctest::Approx(coercivity_c1(d).value).epsilon(1e-14));

    // sweep stays above the closed form
    CHECK(sweep_coercivity_min(d, 500, 7) >=
          coercivity_c1(d).value - 1e-12);
}

TEST_CASE("3D div-curl constant") {
    Domain d(box(M_PI, M_PI / 2.0, 12, 12));
    // smallest admissible |kappa|^2 is 2 (single-index modes collapse)
    CHECK(divfree_lambda1_3d(d) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(divcurl_constant_3d(d).value ==
          doctest::Approx(std::sqrt(1.5)).epsilon(1e-14));

    // doubling all lengths quarters lambda1; mode enumeration gives 1/2
    Domain big(box(2.0 * M_PI, M_PI, 12, 12));
    CHECK(divfree_lambda1_3d(big) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(divcurl_constant_3d(big).value ==
          doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));

    // sweep never exceeds the closed form
    CHECK(sweep_divcurl_max(d, 500, 21) <=
          divcurl_constant_3d(d).value + 1e-12);

    // field-by-field inequality
    for (unsigned seed : {9u, 10u}) {
        const Velocity3D u = random_divfree3(d, seed);
        CHECK(h1sq(u.u) <= divcurl_constant_3d(d).value *
                               divcurl_constant_3d(d).value *
                               l2sq(rot3(u.u)) * (1.0 + 1e-12));
    }
}

TEST_CASE("embedding estimates") {
    Domain d(box(M_PI, M_PI / 2.0, 12, 12));

    CHECK_THROWS_AS(estimate_embedding(EmbeddingKind::CI, d, 0, 1),
                    std::invalid_argument);

    // determinism
    const ConstantEstimate a =
        estimate_embedding(EmbeddingKind::CL6, d, 40, 5);
    const ConstantEstimate b =
        estimate_embedding(EmbeddingKind::CL6, d, 40, 5);
    CHECK(a.value == b.value);
    CHECK(a.name == "c_L6");
    CHECK(a.method == "random-lower-bound");

    // single-mode ratio is dominated by the estimate (the sweep includes
    // canonical single-mode candidates)
    Velocity3D u(d);
    u.u[0].at(1, 1, 1) = 1.0;
    u.u[1].at(1, 1, 1) = 1.0;
    u.u[2].at(1, 1, 1) = -2.0;
    leray_project(u.u);
    const double single = lsigma_norm(u.u, 6.0) / std::sqrt(h1sq(u.u));
    CHECK(a.value >= single * (1.0 - 1e-12));

    const ConstantEstimate ci =
        estimate_embedding(EmbeddingKind::CI, d, 20, 6);
    CHECK(ci.value > 0.0);
    const ConstantEstimate cinf =
        estimate_embedding(EmbeddingKind::CLinf, d, 40, 7, 2.5);
    CHECK(cinf.value > 0.0);
    // the sup of sin x sin y is 1, its W1-sigma norm is bigger, so the
    // ratio is a genuine lower bound below 1
    CHECK(cinf.value < 1.0);
}
