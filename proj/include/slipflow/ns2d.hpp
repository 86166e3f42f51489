/// @file ns2d.hpp
/// @brief Base-flow solver: the 2D problem in vorticity-streamfunction form,
///        stepped over the intervals [kT, (k+1)T] with an integrating-factor
///        RK3 (diffusion integrated exactly per mode).

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "slipflow/field.hpp"
#include "slipflow/forcing.hpp"

namespace slipflow {

struct State2D {
    double t = 0.0;
    int k = 0;  ///< interval index, floor(t/T)
    ScalarField2 psi;
    ScalarField2 omega;  ///< = Laplacian(psi), kept consistent

    Velocity2D velocity() const {
        Velocity2D w;
        w.psi = psi;
        return w;
    }
};

struct InitialData2D {
    enum class Kind { Zero, TaylorGreen, Random, Modes };
    Kind kind = Kind::Zero;
    double amplitude = 1.0;   ///< Taylor-Green: psi(1,1) = -amplitude
    std::uint64_t seed = 0;   ///< Random
    double energy = 1.0;      ///< Random: target ||w(0)||_L2^2
    int max_mode = -1;        ///< Random band cap
    struct Mode {
        int m1 = 0, m2 = 0;
        double psi = 0.0;
    };
    std::vector<Mode> modes;  ///< Modes
};

/// One log row; all norm columns store norms (not squares).
struct Sample2D {
    double t = 0.0;
    int k = 0;
    double E = 0.0;            ///< ||w||_L2
    double H1 = 0.0;           ///< ||w||_H1
    double enstrophy = 0.0;    ///< ||rot2 w||_L2
    double palinstrophy = 0.0; ///< ||grad rot2 w||_L2
    double W1sigma = 0.0;      ///< ||w||_W1sigma
    double force_L2 = 0.0;     ///< ||hbar||_L2
    double force_Lsigma = 0.0; ///< ||hbar||_Lsigma
};

struct TrajectoryLog {
    double T = 0.0;
    double sigma = 4.0;
    std::vector<Sample2D> samples;

    void write_csv(std::ostream& os) const;
    static TrajectoryLog read_csv(std::istream& is, double T, double sigma);
};

struct RunOptions2D {
    int k_max = 1;       ///< number of intervals [kT,(k+1)T] to advance
    double dt = 1e-3;    ///< snapped to T/round(T/dt)
    int stride = 10;     ///< sampling stride in steps (endpoints always kept)
    double sigma = 4.0;  ///< W1sigma column exponent
};

State2D init_2d(const Domain& d, const InitialData2D& data);

/// One integrating-factor RK3 step.  Throws on dt <= 0, advective CFL
/// violation (dt > min_i h_i / max|w_i|) or non-finite state (blow-up).
State2D step_2d(const Domain& d, const State2D& s, const ForcingSpec& h,
                double dt);

Sample2D sample_2d(const Domain& d, const State2D& s,
                   const CompiledForcing2& h, double sigma);

struct Run2DResult {
    State2D final;
    TrajectoryLog log;
    double dt_effective = 0.0;
};

/// Advance k_max intervals from a state sitting on an interval boundary,
/// logging every `stride` steps plus both endpoints of every interval.
Run2DResult run_2d(const Domain& d, const State2D& start,
                   const ForcingSpec& h, const RunOptions2D& opt);

namespace detail {

/// Integrating-factor RK3 stage data shared with the coupled 3D stepper:
/// vorticity at stage times (t, t+dt/2, t+dt) plus the proposed end state.
struct Stages2D {
    ScalarField2 s0, s1, s2;
    State2D next;
};

class Stepper2D {
  public:
    Stepper2D(const Domain& d, const ForcingSpec& h);
    Stages2D step_detail(const State2D& s, double dt) const;
    State2D step(const State2D& s, double dt) const;
    const CompiledForcing2& forcing() const { return forcing_; }

  private:
    std::vector<double> nonlinear(const ScalarField2& omega, double t) const;
    void check_cfl(const ScalarField2& omega, double dt) const;

    const Domain* dom_;
    CompiledForcing2 forcing_;
    std::vector<double> lam_;  // |kappa|^2 per mode
    mutable std::vector<double> ehalf_;  // exp(-nu lam dt/2), cached per dt
    mutable double cached_dt_ = -1.0;
};

}  // namespace detail

}  // namespace slipflow
