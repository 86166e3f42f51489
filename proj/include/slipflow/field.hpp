/// @file field.hpp
/// @brief Spectral coefficient containers with parity tags.

#pragma once

#include <array>
#include <vector>

#include "slipflow/domain.hpp"

namespace slipflow {

/// Scalar field on the cross-section, stored as coefficients [m1*N2+m2].
struct ScalarField2 {
    const Domain* dom = nullptr;
    Parity2 parity{Parity::Sin, Parity::Sin};
    std::vector<double> c;

    ScalarField2() = default;
    ScalarField2(const Domain& d, Parity2 p)
        : dom(&d), parity(p), c(d.size2(), 0.0) {}

    int n1() const { return dom->resolution(0); }
    int n2() const { return dom->resolution(1); }
    double& at(int m1, int m2) { return c[std::size_t(m1) * n2() + m2]; }
    double at(int m1, int m2) const { return c[std::size_t(m1) * n2() + m2]; }
};

/// Scalar field on the cylinder, coefficients [(m1*N2+m2)*N3+m3].
struct ScalarField3 {
    const Domain* dom = nullptr;
    Parity3 parity{Parity::Sin, Parity::Sin, Parity::Sin};
    std::vector<double> c;

    ScalarField3() = default;
    ScalarField3(const Domain& d, Parity3 p)
        : dom(&d), parity(p), c(d.size3(), 0.0) {}

    int n1() const { return dom->resolution(0); }
    int n2() const { return dom->resolution(1); }
    int n3() const { return dom->resolution(2); }
    double& at(int m1, int m2, int m3) {
        return c[(std::size_t(m1) * n2() + m2) * n3() + m3];
    }
    double at(int m1, int m2, int m3) const {
        return c[(std::size_t(m1) * n2() + m2) * n3() + m3];
    }
};

using VectorField2 = std::array<ScalarField2, 2>;
using VectorField3 = std::array<ScalarField3, 3>;

/// 2D divergence-free velocity represented by its streamfunction psi
/// (sine-sine).  w1 = -psi_{,x2}, w2 = psi_{,x1}, so div w = 0 and
/// w.n = 0 on the boundary hold identically; rot2 w = Laplacian(psi)
/// vanishes on the boundary by parity.
struct Velocity2D {
    ScalarField2 psi;

    Velocity2D() = default;
    explicit Velocity2D(const Domain& d) : psi(d, Domain::stream_parity) {}
};

/// Scalar vorticity (and div-curl data), sine-sine.
struct Vorticity2D {
    ScalarField2 f;

    Vorticity2D() = default;
    explicit Vorticity2D(const Domain& d) : f(d, Domain::stream_parity) {}
};

/// 3D velocity with the free-slip parity table (component i sine along
/// axis i, cosine along the others).
struct Velocity3D {
    VectorField3 u;

    Velocity3D() = default;
    explicit Velocity3D(const Domain& d)
        : u{ScalarField3(d, Domain::velocity_parity3(0)),
            ScalarField3(d, Domain::velocity_parity3(1)),
            ScalarField3(d, Domain::velocity_parity3(2))} {}
};

/// Construct an empty velocity-parity vector field.
inline VectorField2 make_velocity2(const Domain& d) {
    return {ScalarField2(d, Domain::velocity_parity2(0)),
            ScalarField2(d, Domain::velocity_parity2(1))};
}

}  // namespace slipflow
