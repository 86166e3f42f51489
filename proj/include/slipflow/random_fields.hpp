/// @file random_fields.hpp
/// @brief Seeded random band-limited fields for sweeps, presets and tests.
///
/// All draws come from a splitmix-fed xoshiro-style generator reduced to
/// uniforms in [-1, 1]; the same (seed, arguments) always reproduces the
/// same field, independent of platform or standard library.

#pragma once

#include <cstdint>

#include "slipflow/field.hpp"

namespace slipflow {

/// Deterministic uniform generator.
class Rng {
  public:
    explicit Rng(std::uint64_t seed);
    /// Uniform in [-1, 1).
    double symmetric();
    std::uint64_t next_u64();

  private:
    std::uint64_t s_[4];
};

/// Random scalar field with coefficients ~ decay(m) * U[-1,1], where
/// decay(m) = (1 + |kappa|^2)^(-smooth).  Modes above `max_mode` (when >= 0)
/// are left empty.
ScalarField2 random_scalar2(const Domain& d, Parity2 p, std::uint64_t seed,
                            int max_mode = -1, double smooth = 1.0);
ScalarField3 random_scalar3(const Domain& d, Parity3 p, std::uint64_t seed,
                            int max_mode = -1, double smooth = 1.0);

/// Random streamfunction velocity (sine-sine psi).
Velocity2D random_stream(const Domain& d, std::uint64_t seed,
                         int max_mode = -1, double smooth = 1.0);

/// Random divergence-free 3D velocity (assembled in the velocity parity
/// table, then projected).
Velocity3D random_divfree3(const Domain& d, std::uint64_t seed,
                           int max_mode = -1, double smooth = 1.0);

}  // namespace slipflow
