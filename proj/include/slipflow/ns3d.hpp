/// @file ns3d.hpp
/// @brief Perturbation solver: the 3D difference flow u = v - w in the
///        cylinder, coupled to a 2D base trajectory stepped in lockstep with
///        the same integrating-factor RK3, with the pressure gradient
///        eliminated by per-mode Leray projection.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "slipflow/field.hpp"
#include "slipflow/forcing.hpp"
#include "slipflow/ns2d.hpp"

namespace slipflow {

/// Per-mode orthogonal projection onto the divergence-free subspace:
/// u_hat <- u_hat - kappa (kappa . u_hat)/|kappa|^2.  Idempotent and
/// norm non-increasing; the discrete divergence coefficients vanish
/// afterwards.
void leray_project(VectorField3& u);

/// Max |kappa . u_hat| over modes (discrete divergence residual).
double divergence_residual(const VectorField3& u);

/// x3-independent embedding of a 2D velocity: components 1,2 carry w at
/// axial mode 0, component 3 vanishes.  Satisfies the 3D wall conditions
/// and div u = 0 exactly.
Velocity3D embed_2d_in_3d(const Velocity2D& w);

struct State3D {
    double t = 0.0;
    int k = 0;
    VectorField3 u;
};

struct InitialData3D {
    enum class Kind { Zero, Modes, Random, Embed2D };
    Kind kind = Kind::Zero;
    struct Mode {
        int component = 0;
        int m1 = 0, m2 = 0, m3 = 0;
        double amp = 0.0;
    };
    std::vector<Mode> modes;
    std::uint64_t seed = 0;  ///< Random
    int max_mode = -1;
    /// Optional rescaling applied after assembly/projection.
    enum class ScaleNorm { None, L2sq, H1sq };
    ScaleNorm scale_norm = ScaleNorm::None;
    double scale_target = 0.0;
};

/// Assemble (and Leray-project) initial data; `embed_from` supplies the 2D
/// state for Kind::Embed2D.
State3D init_3d(const Domain& d, const InitialData3D& data,
                const State2D* embed_from = nullptr);

/// One log row (squared quantities carry the 2 suffix).
struct Sample3D {
    double t = 0.0;
    int k = 0;
    double X2 = 0.0;   ///< ||rot u||_L2(D)^2
    double Y2 = 0.0;   ///< ||rot rot u||_L2(D)^2
    double uL2 = 0.0;  ///< ||u||_L2(D)
    double uH1 = 0.0;  ///< ||u||_H1(D)
    double G2 = 0.0;   ///< (c/nu) ||gbar||_L2(D)^2
    double A2 = 0.0;   ///< (c/nu) ||w||_W1sigma+(Omega)^2
};

struct StabilityLog {
    double T = 0.0;
    std::vector<Sample3D> samples;

    void write_csv(std::ostream& os) const;
    static StabilityLog read_csv(std::istream& is, double T);
};

struct RunOptions3D {
    int k_max = 1;
    double dt = 1e-3;
    int stride = 10;
    double sigma = 4.0;       ///< base-log W1sigma column
    double sigma_plus = 2.5;  ///< exponent in A2
    double c_generic = 1.0;   ///< the c in G2 and A2
};

/// Advances the base flow and the perturbation together with identical
/// stage times; the base trajectory is bit-identical to a standalone run_2d
/// with the same forcing and dt.
class CoupledStepper {
  public:
    CoupledStepper(const Domain& d, const ForcingSpec& h,
                   const ForcingSpec& g);

    /// One joint step.  Throws on dt <= 0, CFL violation, blow-up, or
    /// desynchronized inputs (|w.t - u.t| > 1e-9).
    void step(State2D& w, State3D& u, double dt);

    /// Running max of the post-projection divergence residual over every
    /// stage taken so far.
    double max_divergence_residual() const { return max_div_; }
    const CompiledForcing2& forcing2() const { return base_.forcing(); }
    const CompiledForcing3& forcing3() const { return g_; }

  private:
    VectorField3 nonlinear(const VectorField3& u, const ScalarField2& omega2,
                           double t);
    void check_cfl(const VectorField3& u, const ScalarField2& omega2,
                   double dt) const;

    const Domain* dom_;
    detail::Stepper2D base_;
    CompiledForcing3 g_;
    std::vector<double> lam3_;  // |kappa|^2 per 3D mode
    std::vector<double> ehalf_;
    double cached_dt_ = -1.0;
    double max_div_ = 0.0;
};

/// Single perturbation step against a synchronized base state (the base
/// stages are recomputed internally; the returned state is what
/// CoupledStepper would produce).
State3D step_3d(const Domain& d, const State3D& u, const State2D& w,
                const ForcingSpec& g, const ForcingSpec& h, double dt);

Sample3D sample_3d(const Domain& d, const State3D& u, const State2D& w,
                   const CompiledForcing3& g, const RunOptions3D& opt);

struct StabilityRunResult {
    State2D base_final;
    State3D pert_final;
    TrajectoryLog base_log;
    StabilityLog log;
    double max_divergence_residual = 0.0;
    double dt_effective = 0.0;
};

/// Coupled run over k_max intervals, logging both trajectories.
StabilityRunResult run_stability(const Domain& d, const State2D& base0,
                                 const State3D& u0, const ForcingSpec& h,
                                 const ForcingSpec& g,
                                 const RunOptions3D& opt);

}  // namespace slipflow
