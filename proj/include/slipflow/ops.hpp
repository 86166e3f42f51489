/// @file ops.hpp
/// @brief Differential operators, norms, mean normalization and the discrete
///        identity checks the energy estimates rely on.
///
/// Derivatives act mode-diagonally and flip the parity of the affected axis
/// (sin -> +kappa cos, cos -> -kappa sin), so every operator here is exact
/// on the discrete space.  Nonlinear products are formed pseudo-spectrally
/// on the collocation grid with 2/3-rule dealiasing.

#pragma once

#include <vector>

#include "slipflow/field.hpp"

namespace slipflow {

// --- exact spectral operators ----------------------------------------------

ScalarField2 derivative(const ScalarField2& f, int axis);
ScalarField3 derivative(const ScalarField3& f, int axis);
ScalarField2 laplacian(const ScalarField2& f);
ScalarField3 laplacian(const ScalarField3& f);

/// Velocity components of a streamfunction field: (-psi_{,x2}, psi_{,x1}).
VectorField2 velocity_components(const Velocity2D& w);

/// Scalar curl of a 2D velocity: rot2 w = w2_{,x1} - w1_{,x2}.  For a
/// streamfunction representation this equals Laplacian(psi).
Vorticity2D rot2(const Velocity2D& w);
ScalarField2 rot2(const VectorField2& v);

/// tilde-rot of a scalar: (phi_{,x2}, -phi_{,x1}).  Satisfies
/// tilde_rot(rot2(w)) = -Laplacian(w) exactly on the discrete space.
VectorField2 tilde_rot(const ScalarField2& phi);

VectorField3 rot3(const VectorField3& u);
ScalarField3 divergence3(const VectorField3& u);

// --- collocation values -----------------------------------------------------

std::vector<double> to_values(const ScalarField2& f);
std::vector<double> to_values_os(const ScalarField2& f);
std::vector<double> to_values(const ScalarField3& f);
std::vector<double> to_values_os(const ScalarField3& f);
ScalarField2 from_values(const Domain& d, Parity2 p,
                         std::span<const double> values);
ScalarField3 from_values(const Domain& d, Parity3 p,
                         std::span<const double> values);

/// Direct basis summation at one point (boundary checks, oracles).
double eval_at(const ScalarField2& f, double x1, double x2);
double eval_at(const ScalarField3& f, double x1, double x2, double x3);

// --- advection ---------------------------------------------------------------

/// a . grad q, dealiased pseudo-spectral product, projected back onto q's
/// parity space.  Throws std::invalid_argument on shape or parity mismatch
/// (the advecting field must carry the velocity parity table).
ScalarField2 advect(const VectorField2& a, const ScalarField2& q);
ScalarField3 advect(const VectorField3& a, const ScalarField3& q);

// --- norms -------------------------------------------------------------------

enum class NormKind { L2, Lsigma, H1, H2, Linf, W1sigma };

double l2sq(const ScalarField2& f);
double l2sq(const VectorField2& v);
double l2sq(const ScalarField3& f);
double l2sq(const VectorField3& v);
double h1sq(const ScalarField2& f);
double h1sq(const VectorField2& v);
double h1sq(const ScalarField3& f);
double h1sq(const VectorField3& v);
double h2sq(const ScalarField2& f);
double h2sq(const VectorField2& v);
double h2sq(const ScalarField3& f);
double h2sq(const VectorField3& v);

/// L_sigma norms by 2x oversampled midpoint quadrature (sigma in (1, inf)).
double lsigma_norm(const ScalarField2& f, double sigma);
double lsigma_norm(const VectorField2& v, double sigma);
double lsigma_norm(const ScalarField3& f, double sigma);
double lsigma_norm(const VectorField3& v, double sigma);
/// Grid max on the 2x oversampled grid (lower bound of the true sup).
double linf_norm(const ScalarField2& f);
double linf_norm(const VectorField2& v);
/// (||v||_sigma^sigma + ||grad v||_sigma^sigma)^(1/sigma).
double w1sigma_norm(const VectorField2& v, double sigma);
double w1sigma_norm(const VectorField3& v, double sigma);

/// Dispatcher used by the reporting layer; throws on invalid kind/sigma.
double norm(const VectorField2& v, NormKind kind, double sigma = 0.0);
double norm(const VectorField3& v, NormKind kind, double sigma = 0.0);

// --- mean normalization ------------------------------------------------------

double field_mean(const ScalarField2& f);
double field_mean(const ScalarField3& f);

/// hbar(x) = field(x) - mean, stored without modifying the coefficients
/// (constants are not representable in sine-parity spaces).
struct MeanNormalized2 {
    VectorField2 field;
    std::array<double, 2> mean{};
};
struct MeanNormalized3 {
    VectorField3 field;
    std::array<double, 3> mean{};
};

MeanNormalized2 mean_normalize(const VectorField2& h);
MeanNormalized3 mean_normalize(const VectorField3& h);

double l2sq(const MeanNormalized2& h);
double l2sq(const MeanNormalized3& h);
double lsigma_norm(const MeanNormalized2& h, double sigma);

// --- identity checks ---------------------------------------------------------

/// Integral of w . grad w . Laplacian(w) over the cross-section by
/// oversampled quadrature; vanishes for fields with exact boundary
/// conditions.
double nonlinear_orthogonality(const Velocity2D& w);

/// Pointwise gap between the Navier relation and the slip traction on the
/// boundary.  On flat faces the relation reduces to
/// n . D(w) . tau = rot2 w, and rot2 w vanishes there by parity, so both
/// numbers are zero for admissible fields.
struct SlipGap {
    double identity_residual = 0.0;  ///< max |n.D(w).tau - rot2 w|
    double traction_max = 0.0;       ///< max |n.D(w).tau|
};
SlipGap navier_slip_gap(const Velocity2D& w);

}  // namespace slipflow
