/// @file ledger.cpp

#include "slipflow/ledger.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <json.hpp>

#include "slipflow/constants.hpp"

namespace slipflow {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
}

bool near(double a, double b) {
    return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
}

/// Indices of samples sitting exactly on interval boundaries kT.
std::vector<std::size_t> boundary_indices(const std::vector<double>& times,
                                          double T) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double kf = times[i] / T;
        if (std::abs(kf - std::round(kf)) <= 1e-9 * std::max(1.0, kf))
            idx.push_back(i);
    }
    return idx;
}

/// Cumulative trapezoid of y over the sample times, anchored at index a.
std::vector<double> cumtrapz(const std::vector<double>& t,
                             const std::vector<double>& y, std::size_t a,
                             std::size_t b) {
    std::vector<double> out(b - a + 1, 0.0);
    for (std::size_t i = a + 1; i <= b; ++i)
        out[i - a] = out[i - a - 1] +
                     0.5 * (y[i] + y[i - 1]) * (t[i] - t[i - 1]);
    return out;
}

/// Non-uniform three-point first derivative at the middle node.
double deriv3(double t0, double f0, double t1, double f1, double t2,
              double f2) {
    return f0 * (t1 - t2) / ((t0 - t1) * (t0 - t2)) +
           f1 * (2.0 * t1 - t0 - t2) / ((t1 - t0) * (t1 - t2)) +
           f2 * (t1 - t0) / ((t2 - t0) * (t2 - t1));
}

}  // namespace

MonitorReport make_report(std::string id, std::string k, double lhs,
                          double rhs, double tol) {
    MonitorReport r;
    r.id = std::move(id);
    r.k = std::move(k);
    r.lhs = lhs;
    r.rhs = rhs;
    r.margin = rhs - lhs;
    r.tol = tol;
    r.pass = r.margin >= -tol;
    return r;
}

void fill_domain_constants(const Domain& d, ConstantsLedger& L) {
    L.nu = d.spec().nu;
    L.T = d.spec().T;
    L.lambda1_2d = dirichlet_lambda1(d);
    L.lambda1_3d = divfree_lambda1_3d(d);
    L.c_p = poincare_constant(d).value;
    L.c_1 = coercivity_c1(d).value;
    L.c_e = divcurl_constant_3d(d).value;
}

void compute_A(const TrajectoryLog& log, ConstantsLedger& L) {
    require(!log.samples.empty(), "compute_A: empty log");
    const double T = log.T;
    std::vector<double> t, f2;
    for (const Sample2D& s : log.samples) {
        t.push_back(s.t);
        f2.push_back(s.force_L2 * s.force_L2);
    }
    const auto bnd = boundary_indices(t, T);
    require(bnd.size() >= 2, "compute_A: log must cover a full interval");

    double worst = 0.0;
    for (std::size_t b = 0; b + 1 < bnd.size(); ++b) {
        const auto cum = cumtrapz(t, f2, bnd[b], bnd[b + 1]);
        worst = std::max(worst, cum.back());
    }
    L.A1sq = worst / (L.nu * L.c_1);

    const Sample2D& s0 = log.samples.front();
    L.A2sq = L.A1sq / (1.0 - std::exp(-L.nu * L.c_1 * T)) + s0.E * s0.E;
    L.A3sq = L.A1sq + L.A2sq;
    L.A4sq = L.c_1 * L.A1sq / (1.0 - std::exp(-L.c_p * L.nu * T)) +
             s0.enstrophy * s0.enstrophy;
    L.A5sq = L.c_1 * L.A1sq + L.A4sq;
    L.A6 = 0.0;
    for (const Sample2D& s : log.samples) L.A6 = std::max(L.A6, s.W1sigma);
}

void compute_B(const StabilityLog& log, ConstantsLedger& L) {
    require(!log.samples.empty(), "compute_B: empty log");
    require(L.A5sq >= 0.0 && L.c_generic > 0.0,
            "compute_B: ledger is missing A5/c_generic");
    const double T = log.T;
    std::vector<double> t, g2;
    for (const Sample3D& s : log.samples) {
        t.push_back(s.t);
        g2.push_back(s.G2 * L.nu / L.c_generic);  // ||g||^2 from G2
    }
    const auto bnd = boundary_indices(t, T);
    require(bnd.size() >= 2, "compute_B: log must cover a full interval");
    double worst = 0.0;
    for (std::size_t b = 0; b + 1 < bnd.size(); ++b) {
        const auto cum = cumtrapz(t, g2, bnd[b], bnd[b + 1]);
        worst = std::max(worst, cum.back());
    }
    L.B1sq = worst;
    const double cnu = L.c_generic / L.nu;
    L.B2sq = cnu * std::exp(cnu * L.A5sq) * L.B1sq;
    L.B3sq = L.B2sq / (1.0 - std::exp(-0.5 * L.nu * T)) +
             log.samples.front().uL2 * log.samples.front().uL2;
    L.B4sq = std::exp(cnu * L.A5sq) * cnu * L.B1sq + L.B3sq;
}

double compute_gamma_star(const ConstantsLedger& L) {
    require(L.c_0 > 0.0, "gamma_star: c_0 must be positive");
    require(L.c_star > 0.0 && L.c_star <= L.nu,
            "gamma_star: c_star must lie in (0, nu]");
    const double x = L.nu * L.nu * L.nu * (L.nu - 0.5 * L.c_star) / L.c_0;
    return std::pow(x, 0.25);
}

std::vector<MonitorReport> hypothesis_checks(const ConstantsLedger& L,
                                             double u0_h1sq, double sup_G2,
                                             bool include_l2_route) {
    std::vector<MonitorReport> out;
    const double g = L.gamma;
    out.push_back(make_report(
        "HYP(4.22)", "global", 0.5 * L.c_star,
        L.nu - L.c_0 / (L.nu * L.nu * L.nu) * g * g * g * g, 0.0));
    out.push_back(make_report("HYP(4.13)", "u0", u0_h1sq, g, 0.0));
    out.push_back(
        make_report("HYP(4.13)", "G", sup_G2, 0.25 * L.c_star * g, 0.0));
    if (include_l2_route)
        out.push_back(make_report(
            "HYP(4.2)", "global",
            -0.5 * L.nu * L.T + L.c_generic / L.nu * L.A5sq, 0.0, 0.0));
    return out;
}

// ============================================================================
// Base-flow recursion monitors
// ============================================================================

std::vector<MonitorReport> monitor_recursions(const TrajectoryLog& log,
                                              const ConstantsLedger& L) {
    require(!log.samples.empty(), "monitor_recursions: empty log");
    const double T = log.T;
    const double nu = L.nu, c1 = L.c_1, cp = L.c_p;
    const double c2 = L.effective_c2();

    std::vector<double> t, E2, H12, Z2, P2, f2;
    for (const Sample2D& s : log.samples) {
        t.push_back(s.t);
        E2.push_back(s.E * s.E);
        H12.push_back(s.H1 * s.H1);
        Z2.push_back(s.enstrophy * s.enstrophy);
        P2.push_back(s.palinstrophy * s.palinstrophy);
        f2.push_back(s.force_L2 * s.force_L2);
    }
    const auto bnd = boundary_indices(t, T);
    require(bnd.size() >= 2,
            "monitor_recursions: log lacks interval endpoint samples");

    std::vector<MonitorReport> out;
    double worstE = 0.0, worstZ = 0.0, worstH = 0.0;
    for (std::size_t i : bnd) {
        worstE = std::max(worstE, E2[i]);
        worstZ = std::max(worstZ, Z2[i]);
        worstH = std::max(worstH, H12[i]);
    }

    for (std::size_t b = 0; b + 1 < bnd.size(); ++b) {
        const std::size_t a = bnd[b], e = bnd[b + 1];
        const int k = int(std::round(t[a] / T));
        const std::string ks = std::to_string(k);
        const auto forceInt = cumtrapz(t, f2, a, e);

        // endpoint energy recursion
        out.push_back(make_report(
            "E-rec(3.8)", ks, E2[e],
            forceInt.back() / (nu * c1) + E2[a] * std::exp(-nu * c1 * T),
            1e-8 * L.A2sq));
        // endpoint enstrophy recursion
        out.push_back(make_report(
            "Z-rec(3.17)", ks, Z2[e],
            forceInt.back() / nu + Z2[a] * std::exp(-cp * nu * T),
            1e-8 * L.A4sq));

        // running bounds over the interval
        std::vector<double> h1int(e - a + 1), zint(e - a + 1),
            wint(e - a + 1);
        {
            std::vector<double> y1(e - a + 1), y2(e - a + 1), y3(e - a + 1);
            for (std::size_t i = a; i <= e; ++i) {
                y1[i - a] = H12[i];
                y2[i - a] = Z2[i] + P2[i];
                y3[i - a] = E2[i] + Z2[i] + P2[i];
            }
            for (std::size_t i = 1; i < y1.size(); ++i) {
                const double dt = t[a + i] - t[a + i - 1];
                h1int[i] = h1int[i - 1] + 0.5 * (y1[i] + y1[i - 1]) * dt;
                zint[i] = zint[i - 1] + 0.5 * (y2[i] + y2[i - 1]) * dt;
                wint[i] = wint[i - 1] + 0.5 * (y3[i] + y3[i - 1]) * dt;
            }
        }
        double lhsE = 0.0, lhsZ = 0.0, lhsH = 0.0;
        for (std::size_t i = a; i <= e; ++i) {
            lhsE = std::max(lhsE, E2[i] + nu * c1 * h1int[i - a]);
            lhsZ = std::max(lhsZ, Z2[i] + nu * cp * zint[i - a]);
            lhsH = std::max(lhsH, H12[i] + nu * cp * wint[i - a]);
        }
        out.push_back(
            make_report("E-bound(3.2)", ks, lhsE, L.A3sq, 1e-8 * L.A3sq));
        out.push_back(
            make_report("Z-bound(3.11)", ks, lhsZ, L.A5sq, 1e-8 * L.A5sq));
        out.push_back(make_report("H1-bound(3.20)", ks, lhsH, c2 * L.A5sq,
                                  1e-8 * c2 * L.A5sq));
    }

    out.push_back(make_report("E-bound(3.2)", "endpoints", worstE, L.A2sq,
                              1e-8 * L.A2sq));
    out.push_back(make_report("Z-bound(3.11)", "endpoints", worstZ, L.A4sq,
                              1e-8 * L.A4sq));
    out.push_back(make_report("H1-bound(3.20)", "endpoints", worstH,
                              c2 * L.A4sq, 1e-8 * c2 * L.A4sq));
    return out;
}

// ============================================================================
// Stability monitors
// ============================================================================

namespace {

/// Data-driven tolerance for finite-difference inequality checks: the
/// centered-difference truncation error (h^2/6)|f'''| estimated from third
/// differences, plus a relative floor on the term scale.
std::vector<double> derivative_tolerances(const std::vector<double>& t,
                                          const std::vector<double>& f,
                                          double scale) {
    const std::size_t n = t.size();
    std::vector<double> tol(n, 1e-10 * scale);
    for (std::size_t j = 1; j + 1 < n; ++j) {
        const double hl = t[j] - t[j - 1], hr = t[j + 1] - t[j];
        const double h = std::max(hl, hr);
        double d3 = 0.0;
        if (j >= 2 && j + 2 < n && near(hl, hr) &&
            near(t[j - 1] - t[j - 2], hl) && near(t[j + 2] - t[j + 1], hr)) {
            d3 = (f[j + 2] - 2.0 * f[j + 1] + 2.0 * f[j - 1] - f[j - 2]) /
                 (2.0 * h * h * h);
        } else {
            d3 = scale;  // conservative fallback near irregular spacing
        }
        tol[j] += (h * h / 6.0) * std::abs(d3);
    }
    return tol;
}

}  // namespace

StabilityMonitors monitor_stability(const StabilityLog& log,
                                    const ConstantsLedger& L, double gamma,
                                    bool l2_route) {
    require(log.samples.size() >= 3, "monitor_stability: log too short");
    const double T = log.T;
    const double nu = L.nu;

    std::vector<double> t, X2, Y2, U2, G2, A2;
    for (const Sample3D& s : log.samples) {
        t.push_back(s.t);
        X2.push_back(s.X2);
        Y2.push_back(s.Y2);
        U2.push_back(s.uL2 * s.uL2);
        G2.push_back(s.G2);
        A2.push_back(s.A2);
    }
    const std::size_t n = t.size();
    const auto bnd = boundary_indices(t, T);

    StabilityMonitors res;

    // budget bound on the perturbation vorticity
    double supX2 = 0.0, supU2 = 0.0, supH1 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        supX2 = std::max(supX2, X2[i]);
        supU2 = std::max(supU2, U2[i]);
        supH1 = std::max(supH1, log.samples[i].uH1 * log.samples[i].uH1);
    }
    res.reports.push_back(
        make_report("H1-stab(4.14)", "global", supX2, gamma, 1e-8 * gamma));
    res.reports.push_back(make_report("H1-stab(4.14)", "uH1-level", supH1,
                                      L.c_e * L.c_e * gamma,
                                      1e-8 * L.c_e * L.c_e * gamma));

    if (l2_route) {
        for (std::size_t b = 0; b + 1 < bnd.size(); ++b) {
            const std::size_t a = bnd[b], e = bnd[b + 1];
            const int k = int(std::round(t[a] / T));
            res.reports.push_back(make_report(
                "L2-stab-rec(4.11)", std::to_string(k), U2[e],
                L.B2sq + std::exp(-0.5 * nu * T) * U2[a], 1e-8 * L.B4sq));
        }
        res.reports.push_back(make_report("L2-stab(4.4)", "global", supU2,
                                          L.B4sq, 1e-8 * L.B4sq));
    }

    // vorticity ODE inequality with configured c_0, plus extraction of the
    // minimal c_0 that would make it hold at every interior sample
    {
        double scale = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            scale = std::max(scale, nu * Y2[j] + A2[j] * X2[j] + G2[j] +
                                        L.c_0 / std::pow(nu, 3) *
                                            X2[j] * X2[j] * X2[j]);
        const auto tol = derivative_tolerances(t, X2, scale);
        double worst_margin = std::numeric_limits<double>::infinity();
        double worst_tol = 0.0;
        std::size_t worst_j = 1;
        double c0_emp = 0.0;
        for (std::size_t j = 1; j + 1 < n; ++j) {
            const double dX2 = deriv3(t[j - 1], X2[j - 1], t[j], X2[j],
                                      t[j + 1], X2[j + 1]);
            const double lhs = dX2 + nu * Y2[j];
            const double rhs = L.c_0 / std::pow(nu, 3) * X2[j] * X2[j] *
                                   X2[j] +
                               A2[j] * X2[j] + G2[j];
            const double margin = rhs - lhs;
            if (margin < worst_margin) {
                worst_margin = margin;
                worst_tol = tol[j];
                worst_j = j;
            }
            const double demand = lhs - A2[j] * X2[j] - G2[j] - tol[j];
            if (demand > 0.0) {
                const double x6 = X2[j] * X2[j] * X2[j];
                c0_emp = x6 > 0.0 ? std::max(c0_emp, std::pow(nu, 3) *
                                                         demand / x6)
                                  : std::numeric_limits<double>::infinity();
            }
        }
        const double dXw = deriv3(t[worst_j - 1], X2[worst_j - 1],
                                  t[worst_j], X2[worst_j], t[worst_j + 1],
                                  X2[worst_j + 1]);
        res.reports.push_back(make_report(
            "ODE(4.20)", "min-margin", dXw + nu * Y2[worst_j],
            L.c_0 / std::pow(nu, 3) * std::pow(X2[worst_j], 3) +
                A2[worst_j] * X2[worst_j] + G2[worst_j],
            worst_tol));
        res.empirical_c0 = c0_emp;
        res.reports.push_back(
            make_report("ODE(4.20)", "empirical-c0", c0_emp, L.c_0, 1e-12));
    }

    // exponentially weighted transform of the same inequality, interval by
    // interval (the weight integral is anchored at kT)
    for (std::size_t b = 0; b + 1 < bnd.size(); ++b) {
        const std::size_t a = bnd[b], e = bnd[b + 1];
        if (e - a < 2) continue;
        const int k = int(std::round(t[a] / T));
        const auto cumA = cumtrapz(t, A2, a, e);
        std::vector<double> tt(t.begin() + a, t.begin() + e + 1);
        std::vector<double> Z2(e - a + 1), Gb2(e - a + 1);
        for (std::size_t i = 0; i <= e - a; ++i) {
            const double wgt = std::exp(-cumA[i]);
            Z2[i] = wgt * X2[a + i];
            Gb2[i] = wgt * G2[a + i];
        }
        double scale = 0.0;
        for (std::size_t i = 0; i <= e - a; ++i)
            scale = std::max(scale, 0.5 * L.c_star * Z2[i] + Gb2[i]);
        const auto tol = derivative_tolerances(tt, Z2, scale);
        double worst_margin = std::numeric_limits<double>::infinity();
        double wl = 0.0, wr = 0.0, wt = 0.0;
        for (std::size_t i = 1; i + 1 <= e - a; ++i) {
            if (X2[a + i] > gamma * (1.0 + 1e-9)) continue;  // out of regime
            const double dZ2 = deriv3(tt[i - 1], Z2[i - 1], tt[i], Z2[i],
                                      tt[i + 1], Z2[i + 1]);
            const double rhs = -0.5 * L.c_star * Z2[i] + Gb2[i];
            if (rhs - dZ2 < worst_margin) {
                worst_margin = rhs - dZ2;
                wl = dZ2;
                wr = rhs;
                wt = tol[i];
            }
        }
        if (std::isfinite(worst_margin))
            res.reports.push_back(make_report(
                "Z-ode(4.25)", std::to_string(k), wl, wr, wt));
    }

    return res;
}

// ============================================================================
// JSON
// ============================================================================

std::string ledger_to_json(const ConstantsLedger& L) {
    nlohmann::json j;
    j["schema_version"] = 1;
    auto& c = j["constants"];
    c["nu"] = L.nu;
    c["T"] = L.T;
    c["lambda1_2d"] = L.lambda1_2d;
    c["lambda1_3d"] = L.lambda1_3d;
    c["c_p"] = L.c_p;
    c["c_1"] = L.c_1;
    c["c_e"] = L.c_e;
    c["c_I"] = L.c_I;
    c["c_L6"] = L.c_L6;
    c["c_Linf"] = L.c_Linf;
    c["c_generic"] = L.c_generic;
    c["c_0"] = L.c_0;
    c["c_star"] = L.c_star;
    c["c_2"] = L.effective_c2();
    c["sigma"] = L.sigma;
    c["sigma_plus"] = L.sigma_plus;
    c["A1sq"] = L.A1sq;
    c["A2sq"] = L.A2sq;
    c["A3sq"] = L.A3sq;
    c["A4sq"] = L.A4sq;
    c["A5sq"] = L.A5sq;
    c["A6"] = L.A6;
    c["B1sq"] = L.B1sq;
    c["B2sq"] = L.B2sq;
    c["B3sq"] = L.B3sq;
    c["B4sq"] = L.B4sq;
    c["gamma_star"] = L.gamma_star;
    c["gamma"] = L.gamma;
    return j.dump(2) + "\n";
}

std::string reports_to_json(const std::vector<MonitorReport>& hypotheses,
                            const std::vector<MonitorReport>& monitors,
                            double empirical_c0, bool has_empirical) {
    nlohmann::json j;
    j["schema_version"] = 1;
    auto dump = [](const MonitorReport& r) {
        nlohmann::json o;
        o["id"] = r.id;
        o["k"] = r.k;
        o["lhs"] = r.lhs;
        o["rhs"] = r.rhs;
        o["margin"] = r.margin;
        o["tol"] = r.tol;
        o["pass"] = r.pass;
        return o;
    };
    j["hypotheses"] = nlohmann::json::array();
    for (const auto& r : hypotheses) j["hypotheses"].push_back(dump(r));
    j["monitors"] = nlohmann::json::array();
    for (const auto& r : monitors) j["monitors"].push_back(dump(r));
    if (has_empirical) j["empirical_c0"] = empirical_c0;
    return j.dump(2) + "\n";
}

}  // namespace slipflow
