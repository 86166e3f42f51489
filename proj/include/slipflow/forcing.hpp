/// @file forcing.hpp
/// @brief Finite-mode, time-profiled external forces.

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "slipflow/field.hpp"
#include "slipflow/ops.hpp"

namespace slipflow {

struct ForcingProfile {
    enum class Type { Constant, Sinusoidal };
    Type type = Type::Constant;
    double freq = 0.0;   ///< angular frequency (Sinusoidal)
    double phase = 0.0;

    double value(double t) const;
    bool operator==(const ForcingProfile&) const = default;
};

/// One forcing mode: amplitude * profile(t) on the basis function of
/// `component` at multi-index `mode` (third index ignored in 2D).
/// Components use the admissible velocity parity table.
struct ForcingEntry {
    int component = 0;
    std::array<int, 3> mode{0, 0, 0};
    double amplitude = 0.0;
    ForcingProfile profile;
};

struct ForcingSpec {
    std::vector<ForcingEntry> entries;
    bool normalize = true;  ///< subtract the spatial mean in reported norms

    /// Throws std::invalid_argument on out-of-range components/modes,
    /// parity-dead slots or non-finite amplitudes.  `dims` is 2 or 3.
    void validate(const Domain& d, int dims) const;
    bool empty() const { return entries.empty(); }
};

/// Assembled force field at time t (admissible parity).
VectorField2 forcing_field2(const ForcingSpec& spec, const Domain& d,
                            double t);
VectorField3 forcing_field3(const ForcingSpec& spec, const Domain& d,
                            double t);

/// Profile-grouped compilation so per-step evaluation is a few AXPYs and
/// squared norms come from a precomputed Gram matrix.
class CompiledForcing2 {
  public:
    CompiledForcing2() = default;
    CompiledForcing2(const ForcingSpec& spec, const Domain& d);

    /// rot2 of the force at time t, added into a sine-sine coefficient
    /// array (the only way the force enters the vorticity dynamics).
    void add_rot2(double t, std::span<double> coeffs) const;
    /// ||hbar(t)||_L2^2 with the mean subtracted when normalize is set.
    double l2sq_normalized(double t) const;
    /// ||hbar(t)||_{L_sigma}; assembles the field (sample-rate cost).
    double lsigma_normalized(double t, double sigma) const;
    bool empty() const { return groups_.empty(); }

  private:
    const Domain* dom_ = nullptr;
    bool normalize_ = true;
    struct Group {
        ForcingProfile profile;
        VectorField2 h;          // assembled force of this profile group
        ScalarField2 rot2h;      // its scalar curl
        std::array<double, 2> mean{};
    };
    std::vector<Group> groups_;
    std::vector<double> gram_;  // <h_g, h_g'> L2 inner products
};

class CompiledForcing3 {
  public:
    CompiledForcing3() = default;
    CompiledForcing3(const ForcingSpec& spec, const Domain& d);

    /// Adds the Leray-projected force at time t into u-parity coefficient
    /// arrays (one per component).
    void add_projected(double t, std::array<std::span<double>, 3> coeffs)
        const;
    /// ||gbar(t)||_{L2(D)}^2 (mean subtracted when normalize is set).
    double l2sq_normalized(double t) const;
    bool empty() const { return groups_.empty(); }

  private:
    const Domain* dom_ = nullptr;
    bool normalize_ = true;
    struct Group {
        ForcingProfile profile;
        VectorField3 g;          // as specified (data norm)
        VectorField3 pg;         // Leray projection (what drives the flow)
        std::array<double, 3> mean{};
    };
    std::vector<Group> groups_;
    std::vector<double> gram_;
};

}  // namespace slipflow
