/// @file ledger.hpp
/// @brief Constant chains and inequality monitors: computes A1..A6, B1..B4
///        and gamma_star from logged trajectories and evaluates every
///        monitored inequality with explicit margins and pinned tolerances.

#pragma once

#include <string>
#include <vector>

#include "slipflow/ns2d.hpp"
#include "slipflow/ns3d.hpp"

namespace slipflow {

struct ConstantsLedger {
    double nu = 0.0;
    double T = 0.0;

    // domain constants (closed form on the discrete space)
    double lambda1_2d = 0.0;  ///< smallest Dirichlet eigenvalue of Omega
    double lambda1_3d = 0.0;  ///< smallest |kappa|^2 on div-free 3D modes
    double c_p = 0.0;
    double c_1 = 0.0;
    double c_e = 0.0;

    // embedding lower bounds (randomized) or user overrides
    double c_I = 0.0;
    double c_L6 = 0.0;
    double c_Linf = 0.0;

    // user knobs
    double c_generic = 1.0;  ///< the unnamed constant in the B/G/A chains
    double c_0 = 1.0;        ///< coefficient of X^6 in the vorticity bound
    double c_star = 0.0;     ///< in (0, nu]
    double c_2 = 0.0;        ///< H1-level chain constant; <= 0 means 1/c_1
    double sigma = 4.0;      ///< W1sigma column exponent
    double sigma_plus = 2.5; ///< exponent inside A2(t)

    // computed chains
    double A1sq = 0.0, A2sq = 0.0, A3sq = 0.0, A4sq = 0.0, A5sq = 0.0;
    double A6 = 0.0;
    double B1sq = 0.0, B2sq = 0.0, B3sq = 0.0, B4sq = 0.0;
    double gamma_star = 0.0;
    double gamma = 0.0;  ///< perturbation budget used by the stability run

    double effective_c2() const { return c_2 > 0.0 ? c_2 : 1.0 / c_1; }
};

struct MonitorReport {
    std::string id;   ///< inequality identifier
    std::string k;    ///< interval index, "global", or a labelled variant
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;  ///< rhs - lhs
    double tol = 0.0;     ///< pass when margin >= -tol
    bool pass = false;
};

MonitorReport make_report(std::string id, std::string k, double lhs,
                          double rhs, double tol);

/// Fill the domain constants (closed forms and eigenvalues).
void fill_domain_constants(const Domain& d, ConstantsLedger& L);

/// A1..A6 from a base-flow log covering at least one full interval.
/// Interval integrals use trapezoid quadrature on the logged samples.
void compute_A(const TrajectoryLog& log, ConstantsLedger& L);

/// B1..B4 from a perturbation log (requires A5 already computed).
void compute_B(const StabilityLog& log, ConstantsLedger& L);

/// gamma_star from the closed form nu^3 (nu - c_star/2) / c_0, the largest
/// budget for which the dissipation retains the c_star/2 coefficient.
double compute_gamma_star(const ConstantsLedger& L);

/// Smallness hypotheses.  `include_l2_route` adds the dissipation-vs-A5
/// condition used only by the L2 route.
std::vector<MonitorReport> hypothesis_checks(const ConstantsLedger& L,
                                             double u0_h1sq, double sup_G2,
                                             bool include_l2_route);

/// Per-interval energy/enstrophy recursions and the global A-bounds.
std::vector<MonitorReport> monitor_recursions(const TrajectoryLog& log,
                                              const ConstantsLedger& L);

struct StabilityMonitors {
    std::vector<MonitorReport> reports;
    double empirical_c0 = 0.0;  ///< minimal c_0 making the X-inequality hold
};

/// Stability monitors: the budget bound on X^2, the vorticity ODE
/// inequality (with configured and extracted c_0) and its exponentially
/// weighted transform; optionally the L2-route recursion and bound.
StabilityMonitors monitor_stability(const StabilityLog& log,
                                    const ConstantsLedger& L, double gamma,
                                    bool l2_route);

/// JSON serialization (stable key order, round-trip-exact doubles).
std::string ledger_to_json(const ConstantsLedger& L);
std::string reports_to_json(const std::vector<MonitorReport>& hypotheses,
                            const std::vector<MonitorReport>& monitors,
                            double empirical_c0, bool has_empirical);

}  // namespace slipflow
