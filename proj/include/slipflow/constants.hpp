/// @file constants.hpp
/// @brief The 2D div-curl solver and every named constant of the estimate
///        chains: c_p (Poincare), c_1 (2D coercivity), c_e (3D div-curl) in
///        closed form on the discrete space, plus randomized lower bounds
///        for the embedding constants the estimates leave unnamed.

#pragma once

#include <cstdint>
#include <string>

#include "slipflow/field.hpp"

namespace slipflow {

struct ConstantEstimate {
    std::string name;    ///< c_p, c_1, c_e, c_I, c_L6, c_Linf
    double value = 0.0;  ///< > 0
    std::string method;  ///< closed-form-eigenvalue | rayleigh-sweep |
                         ///< random-lower-bound
    int samples = 0;
    std::uint64_t seed = 0;
};

/// Smallest Dirichlet Laplacian eigenvalue of the cross-section:
/// pi^2 (1/L1^2 + 1/L2^2).
double dirichlet_lambda1(const Domain& d);

/// Smallest |kappa|^2 over nonzero divergence-free 3D modes (modes with two
/// vanishing indices collapse under parity + divergence).
double divfree_lambda1_3d(const Domain& d);

/// Solve rot2 w = b, div w = 0, w.n = 0 through the Dirichlet problem for
/// the streamfunction: psi_hat = -b_hat / |kappa|^2 mode-wise (exact
/// inverse of rot2 on the discrete space).
Velocity2D solve_divcurl_2d(const Vorticity2D& b);

/// c_p = sqrt(lambda_1): largest constant with c_p ||u|| <= ||grad u|| on
/// the Dirichlet (sine-sine) space.
ConstantEstimate poincare_constant(const Domain& d);

/// c_1 = lambda_1 / (1 + lambda_1) = min ||rot2 w||^2 / ||w||_H1^2 over the
/// discrete stream space (per-mode ratio lambda/(1+lambda)).
ConstantEstimate coercivity_c1(const Domain& d);

/// c_e = sqrt((1 + lambda_1^(3)) / lambda_1^(3)): ||u||_H1 <= c_e ||rot u||
/// on the discrete divergence-free space.
ConstantEstimate divcurl_constant_3d(const Domain& d);

enum class EmbeddingKind { CI, CL6, CLinf };

/// Randomized lower bound (max of Rayleigh ratios over `samples` seeded
/// random fields) for:
///   CI    : ||grad u||_L3(D) / (||grad u||_H1^(1/2) ||grad u||_L2^(1/2)),
///   CL6   : ||u||_L6(D) / ||u||_H1(D),
///   CLinf : ||w||_Linf(Omega) / ||w||_W1sigma(Omega).
/// Requires samples >= 1 (the interpolation-sweep contract asks for >= 100
/// in reports; smaller counts are allowed for tests).
ConstantEstimate estimate_embedding(EmbeddingKind kind, const Domain& d,
                                    int samples, std::uint64_t seed,
                                    double sigma_plus = 2.5);

/// Rayleigh sweeps used to cross-check the closed forms; each returns the
/// extremal ratio over `samples` random fields.
double sweep_poincare_min(const Domain& d, int samples, std::uint64_t seed);
double sweep_coercivity_min(const Domain& d, int samples, std::uint64_t seed);
double sweep_divcurl_max(const Domain& d, int samples, std::uint64_t seed);

}  // namespace slipflow
