/// @file domain.hpp
/// @brief Computational domain: rectangle cross-section, cylinder geometry,
///        trigonometric bases compatible with free-slip walls, and fast
///        sine/cosine transforms with 2/3-rule dealiasing.
///
/// All fields live on the box (0,L1) x (0,L2) (x (0,2a) in 3D; the axial
/// coordinate of the physical cylinder (-a,a) is shifted to (0,2a)).
/// Collocation uses the midpoint grid x_j = (j+1/2) L/N on every axis, so
/// sine- and cosine-parity data share one grid and midpoint quadrature is
/// exact for products of basis functions below the Nyquist fold.

#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace slipflow {

enum class Parity : std::uint8_t { Sin = 0, Cos = 1 };

using Parity2 = std::array<Parity, 2>;
using Parity3 = std::array<Parity, 3>;

/// Parity multiplication: pointwise products of sine/cosine series keep a
/// definite parity per axis (sin*sin -> cos, sin*cos -> sin, cos*cos -> cos).
constexpr Parity parity_mul(Parity a, Parity b) {
    return (a == b) ? Parity::Cos : Parity::Sin;
}

/// Geometry, physics and resolution parameters.
struct DomainSpec {
    double L1 = 0.0;  ///< cross-section side along x1 (> 0)
    double L2 = 0.0;  ///< cross-section side along x2 (> 0)
    double a = 0.0;   ///< cylinder half-length; axial extent is 2a
    int N1 = 0;       ///< modes/points along x1 (even, >= 8)
    int N2 = 0;
    int N3 = 0;
    double nu = 0.0;  ///< kinematic viscosity (> 0)
    double T = 0.0;   ///< step-by-step interval length (> 0)

    /// Throws std::invalid_argument when any invariant fails.
    void validate() const;
};

/// Immutable domain: wavenumber tables, collocation nodes, parity tables and
/// cached FFTW plans.  Safe to share across threads after construction
/// (plans are executed through the new-array interface on per-call buffers).
class Domain {
  public:
    explicit Domain(const DomainSpec& spec);
    ~Domain();

    Domain(const Domain&) = delete;
    Domain& operator=(const Domain&) = delete;

    const DomainSpec& spec() const { return spec_; }

    /// Axis extent: L1, L2 or 2a.
    double length(int axis) const { return len_[axis]; }
    int resolution(int axis) const { return n_[axis]; }

    /// kappa_axis(m) = pi m / length(axis).
    double wavenumber(int axis, int m) const { return kappa_[axis][m]; }

    /// Midpoint collocation node x_j = (j+1/2) length/N.
    double node(int axis, int j) const {
        return (j + 0.5) * len_[axis] / n_[axis];
    }
    /// Node of the 2x oversampled grid.
    double node_os(int axis, int j) const {
        return (j + 0.5) * len_[axis] / (2 * n_[axis]);
    }

    /// Largest mode index kept by the 2/3 rule: floor(2N/3).
    int dealias_limit(int axis) const { return (2 * n_[axis]) / 3; }

    /// Parseval weight of one axis factor: integral of the squared basis
    /// function over (0,L): L for the cosine mode 0, L/2 otherwise.
    double mode_weight(int axis, Parity p, int m) const {
        return (p == Parity::Cos && m == 0) ? len_[axis] : 0.5 * len_[axis];
    }

    /// Integral of the basis function over (0,L): 0 for cosine m>=1 and even
    /// sine modes, L for cosine m=0, 2L/(pi m) for odd sine modes.
    double mode_integral(int axis, Parity p, int m) const;

    /// Parity table of the 3D velocity space: component i is sine along
    /// axis i and cosine along the other axes, so u.n = 0 and the
    /// tangential components of rot u vanish on all six faces exactly.
    static Parity3 velocity_parity3(int component);
    /// 2D velocity components derived from a sine-sine streamfunction.
    static Parity2 velocity_parity2(int component);
    /// Parity of curl components: component i is cosine along axis i,
    /// sine along the others.
    static Parity3 curl_parity3(int component);
    static constexpr Parity2 stream_parity{Parity::Sin, Parity::Sin};

    // --- transforms -------------------------------------------------------
    // Coefficient arrays are mode-indexed [m1*N2+m2] (2D) or
    // [(m1*N2+m2)*N3+m3] (3D); sine axes leave slot m=0 identically zero.
    // Value arrays use the same layout over collocation nodes.

    void forward2(std::span<const double> values, Parity2 p,
                  std::span<double> coeffs) const;
    void backward2(std::span<const double> coeffs, Parity2 p,
                   std::span<double> values) const;
    /// Backward transform onto the 2x oversampled midpoint grid (2N1 x 2N2).
    void backward2_os(std::span<const double> coeffs, Parity2 p,
                      std::span<double> values) const;
    /// Forward transform from the 2x oversampled grid, truncated to the
    /// stored band; used to project smooth analytic data without aliasing.
    void forward2_os(std::span<const double> values, Parity2 p,
                     std::span<double> coeffs) const;

    void forward3(std::span<const double> values, Parity3 p,
                  std::span<double> coeffs) const;
    void backward3(std::span<const double> coeffs, Parity3 p,
                   std::span<double> values) const;
    void backward3_os(std::span<const double> coeffs, Parity3 p,
                      std::span<double> values) const;

    /// Forward transform that verifies the data actually lives in the
    /// requested parity space.  Takes samples on the 2x oversampled grid
    /// (where a wrong parity cannot hide in the stored band), projects onto
    /// the band, reconstructs, and throws std::invalid_argument when the
    /// relative leaked energy exceeds 1e-10.
    void forward2_checked(std::span<const double> values_os, Parity2 p,
                          std::span<double> coeffs) const;

    std::size_t size2() const { return std::size_t(n_[0]) * n_[1]; }
    std::size_t size3() const { return std::size_t(n_[0]) * n_[1] * n_[2]; }
    std::size_t size2_os() const { return 4 * size2(); }
    std::size_t size3_os() const { return 8 * size3(); }

    /// Midpoint quadrature weight of the base (os=false) or oversampled grid.
    double cell2(bool os = false) const;
    double cell3(bool os = false) const;

  private:
    struct Plans;

    DomainSpec spec_;
    std::array<double, 3> len_{};
    std::array<int, 3> n_{};
    std::array<std::vector<double>, 3> kappa_;
    std::unique_ptr<Plans> plans_;
};

/// Zeroes every coefficient with mode index above floor(2N/3) on any axis.
/// Idempotent.  `dims` is 2 or 3.
void dealias2(const Domain& d, std::span<double> coeffs);
void dealias3(const Domain& d, std::span<double> coeffs);

}  // namespace slipflow
