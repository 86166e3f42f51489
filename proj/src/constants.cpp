/// @file constants.cpp

#include "slipflow/constants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "slipflow/ns3d.hpp"
#include "slipflow/ops.hpp"
#include "slipflow/random_fields.hpp"

namespace slipflow {

double dirichlet_lambda1(const Domain& d) {
    const double k1 = d.wavenumber(0, 1), k2 = d.wavenumber(1, 1);
    return k1 * k1 + k2 * k2;
}

double divfree_lambda1_3d(const Domain& d) {
    double best = std::numeric_limits<double>::infinity();
    const int n1 = d.resolution(0), n2 = d.resolution(1), n3 = d.resolution(2);
    for (int m1 = 0; m1 < n1; ++m1)
        for (int m2 = 0; m2 < n2; ++m2)
            for (int m3 = 0; m3 < n3; ++m3) {
                const int live =
                    (m1 >= 1 ? 1 : 0) + (m2 >= 1 ? 1 : 0) + (m3 >= 1 ? 1 : 0);
                if (live < 2) continue;  // divergence collapses these modes
                const double k1 = d.wavenumber(0, m1),
                             k2 = d.wavenumber(1, m2),
                             k3 = d.wavenumber(2, m3);
                best = std::min(best, k1 * k1 + k2 * k2 + k3 * k3);
            }
    return best;
}

Velocity2D solve_divcurl_2d(const Vorticity2D& b) {
    const Domain& d = *b.f.dom;
    Velocity2D w(d);
    const int n1 = d.resolution(0), n2 = d.resolution(1);
    for (int m1 = 0; m1 < n1; ++m1) {
        const double k1 = d.wavenumber(0, m1);
        for (int m2 = 0; m2 < n2; ++m2) {
            const double k2 = d.wavenumber(1, m2);
            const double lam = k1 * k1 + k2 * k2;
            w.psi.at(m1, m2) = lam > 0.0 ? -b.f.at(m1, m2) / lam : 0.0;
        }
    }
    return w;
}

ConstantEstimate poincare_constant(const Domain& d) {
    return {"c_p", std::sqrt(dirichlet_lambda1(d)), "closed-form-eigenvalue",
            0, 0};
}

ConstantEstimate coercivity_c1(const Domain& d) {
    const double lam = dirichlet_lambda1(d);
    return {"c_1", lam / (1.0 + lam), "closed-form-eigenvalue", 0, 0};
}

ConstantEstimate divcurl_constant_3d(const Domain& d) {
    const double lam = divfree_lambda1_3d(d);
    return {"c_e", std::sqrt((1.0 + lam) / lam), "closed-form-eigenvalue", 0,
            0};
}

namespace {

double gradsq(const ScalarField2& f) { return h1sq(f) - l2sq(f); }

}  // namespace

double sweep_poincare_min(const Domain& d, int samples, std::uint64_t seed) {
    double best = std::numeric_limits<double>::infinity();
    for (int s = 0; s < samples; ++s) {
        const ScalarField2 u = random_scalar2(d, Domain::stream_parity,
                                              seed + std::uint64_t(s));
        const double den = l2sq(u);
        if (den == 0.0) continue;
        best = std::min(best, std::sqrt(gradsq(u) / den));
    }
    return best;
}

double sweep_coercivity_min(const Domain& d, int samples, std::uint64_t seed) {
    double best = std::numeric_limits<double>::infinity();
    for (int s = 0; s < samples; ++s) {
        const Velocity2D w = random_stream(d, seed + std::uint64_t(s));
        const double den = h1sq(velocity_components(w));
        if (den == 0.0) continue;
        best = std::min(best, l2sq(rot2(w).f) / den);
    }
    return best;
}

double sweep_divcurl_max(const Domain& d, int samples, std::uint64_t seed) {
    double best = 0.0;
    for (int s = 0; s < samples; ++s) {
        const Velocity3D u = random_divfree3(d, seed + std::uint64_t(s));
        const double den = l2sq(rot3(u.u));
        if (den == 0.0) continue;
        best = std::max(best, std::sqrt(h1sq(u.u) / den));
    }
    return best;
}

namespace {

double ratio_ci(const VectorField3& u) {
    const Domain& d = *u[0].dom;
    std::vector<double> sq(d.size3_os(), 0.0);
    double h1 = 0.0, l2 = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const ScalarField3 g = derivative(u[i], j);
            const std::vector<double> gv = to_values_os(g);
            for (std::size_t s = 0; s < sq.size(); ++s)
                sq[s] += gv[s] * gv[s];
            h1 += h1sq(g);
            l2 += l2sq(g);
        }
    if (l2 == 0.0) return 0.0;
    double acc = 0.0;
    for (double s : sq) acc += std::pow(s, 1.5);
    const double l3 = std::pow(acc * d.cell3(true), 1.0 / 3.0);
    return l3 / (std::pow(h1, 0.25) * std::pow(l2, 0.25));
}

double ratio_cl6(const VectorField3& u) {
    const double den = h1sq(u);
    if (den == 0.0) return 0.0;
    return lsigma_norm(u, 6.0) / std::sqrt(den);
}

double ratio_clinf(const Velocity2D& w, double sigma_plus) {
    const VectorField2 v = velocity_components(w);
    const double den = w1sigma_norm(v, sigma_plus);
    if (den == 0.0) return 0.0;
    return linf_norm(v) / den;
}

}  // namespace

ConstantEstimate estimate_embedding(EmbeddingKind kind, const Domain& d,
                                    int samples, std::uint64_t seed,
                                    double sigma_plus) {
    if (samples < 1)
        throw std::invalid_argument(
            "estimate_embedding: samples must be >= 1");
    double best = 0.0;
    // Canonical single-mode candidates first, so single-mode Rayleigh
    // ratios are always dominated by the returned lower bound.
    if (kind == EmbeddingKind::CLinf) {
        for (int m1 = 1; m1 <= 4; ++m1)
            for (int m2 = 1; m2 <= 4; ++m2) {
                Velocity2D w(d);
                w.psi.at(m1, m2) = 1.0;
                best = std::max(best, ratio_clinf(w, sigma_plus));
            }
        for (int s = 0; s < samples; ++s) {
            const Velocity2D w = random_stream(d, seed + std::uint64_t(s));
            best = std::max(best, ratio_clinf(w, sigma_plus));
        }
        return {"c_Linf", best, "random-lower-bound", samples, seed};
    }
    for (int m = 1; m <= 3; ++m) {
        Velocity3D u(d);
        u.u[0].at(m, m, m) = 1.0;
        u.u[1].at(m, m, m) = 1.0;
        u.u[2].at(m, m, m) = -2.0;
        leray_project(u.u);
        best = std::max(best, kind == EmbeddingKind::CI ? ratio_ci(u.u)
                                                        : ratio_cl6(u.u));
    }
    for (int s = 0; s < samples; ++s) {
        const Velocity3D u = random_divfree3(d, seed + std::uint64_t(s));
        best = std::max(best, kind == EmbeddingKind::CI ? ratio_ci(u.u)
                                                        : ratio_cl6(u.u));
    }
    switch (kind) {
        case EmbeddingKind::CI:
            return {"c_I", best, "random-lower-bound", samples, seed};
        case EmbeddingKind::CL6:
            return {"c_L6", best, "random-lower-bound", samples, seed};
        default:
            throw std::invalid_argument("estimate_embedding: unknown kind");
    }
}

}  // namespace slipflow
