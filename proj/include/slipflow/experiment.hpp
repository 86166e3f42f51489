/// @file experiment.hpp
/// @brief Experiment orchestration: strict JSON config parsing, the four
///        experiment types (constants, decay2d, stability3d, oracle) and
///        reproducible artifact emission.

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "slipflow/forcing.hpp"
#include "slipflow/ledger.hpp"
#include "slipflow/ns2d.hpp"
#include "slipflow/ns3d.hpp"

namespace slipflow {

struct ExperimentConfig {
    std::string experiment;  ///< constants | decay2d | stability3d | oracle
    DomainSpec domain;
    InitialData2D initial2d;
    InitialData3D initial3d;
    ForcingSpec forcing2d;
    ForcingSpec forcing3d;

    double dt = 1e-3;
    int k_max = 1;
    int stride = 10;

    // ledger knobs
    double c_generic = 1.0;
    double c_0 = 1.0;
    double c_star = -1.0;  ///< <= 0 means nu
    double c_2 = 0.0;      ///< <= 0 means 1/c_1
    double sigma = 4.0;
    double sigma_plus = 2.5;
    double gamma = 0.0;  ///< <= 0 means gamma_star
    int embedding_samples = 200;
    int sweep_samples = 1000;
    std::uint64_t seed = 1;
    bool check_l2_route = false;

    /// Strict parse: unknown keys, bad types and invariant violations all
    /// throw std::invalid_argument.
    static ExperimentConfig from_json_text(const std::string& text);
};

/// Runs one experiment and writes its artifacts (trajectory.csv,
/// stability.csv, ledger.json, monitors.json, verdict.txt as applicable)
/// under `outdir`.  Returns the process exit status: 0 when every monitored
/// inequality passes, 1 otherwise.  Throws std::invalid_argument for config
/// problems (exit 2 at the CLI) and std::runtime_error for runtime guards
/// (exit 3).
int run_experiment(const ExperimentConfig& cfg, const std::string& outdir);

// --- manufactured-solution oracles (also used by the acceptance suite) -----

/// Relative L2 error of the Taylor-Green vortex against exponential decay
/// at t_end (zero force).
double oracle_taylor_green_error(const Domain& d, double dt, double t_end);

/// Relative L2 error of a small divergence-free single-mode field against
/// exponential decay at rate nu |kappa(1,1,1)|^2.
double oracle_eigenmode_error(const Domain& d, double dt, double t_end,
                              double amplitude);

/// Relative residual of rot2(solve_divcurl(b)) - b on a random datum.
double oracle_divcurl_roundtrip(const Domain& d, std::uint64_t seed);

struct SpectralConvergence {
    double err_coarse = 0.0;  ///< steady-state error at the coarse resolution
    double err_fine = 0.0;    ///< and at the fine one
    int n_coarse = 0;
    int n_fine = 0;
};

/// Steady manufactured forcing on (0,pi)^2 (super-exponentially decaying
/// target spectrum); integrates both resolutions to their steady states and
/// measures the L2 error against the reference profile.
SpectralConvergence oracle_spectral_convergence(double dt, int n_coarse,
                                                int n_fine);

}  // namespace slipflow
