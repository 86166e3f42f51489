/// @file ns3d.cpp

#include "slipflow/ns3d.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "slipflow/ops.hpp"
#include "slipflow/random_fields.hpp"

namespace slipflow {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
}

ScalarField2 stream_from_vorticity(const ScalarField2& omega) {
    const Domain& d = *omega.dom;
    ScalarField2 psi(d, Domain::stream_parity);
    for (int m1 = 0; m1 < psi.n1(); ++m1) {
        const double k1 = d.wavenumber(0, m1);
        for (int m2 = 0; m2 < psi.n2(); ++m2) {
            const double k2 = d.wavenumber(1, m2);
            const double lam = k1 * k1 + k2 * k2;
            psi.at(m1, m2) = lam > 0.0 ? -omega.at(m1, m2) / lam : 0.0;
        }
    }
    return psi;
}

void check_finite3(const VectorField3& u, const char* what) {
    for (const ScalarField3& f : u)
        for (double c : f.c)
            if (!std::isfinite(c))
                throw std::runtime_error(std::string(what) +
                                         ": non-finite value (blow-up guard)");
}

}  // namespace

// ============================================================================
// Projection and embedding
// ============================================================================

void leray_project(VectorField3& u) {
    const Domain& d = *u[0].dom;
    const int n1 = d.resolution(0), n2 = d.resolution(1), n3 = d.resolution(2);
    for (int m1 = 0; m1 < n1; ++m1) {
        const double k1 = d.wavenumber(0, m1);
        for (int m2 = 0; m2 < n2; ++m2) {
            const double k2 = d.wavenumber(1, m2);
            for (int m3 = 0; m3 < n3; ++m3) {
                const double k3 = d.wavenumber(2, m3);
                const double ksq = k1 * k1 + k2 * k2 + k3 * k3;
                if (ksq == 0.0) continue;
                const std::size_t idx =
                    (std::size_t(m1) * n2 + m2) * n3 + m3;
                const double div =
                    k1 * u[0].c[idx] + k2 * u[1].c[idx] + k3 * u[2].c[idx];
                const double s = div / ksq;
                u[0].c[idx] -= k1 * s;
                u[1].c[idx] -= k2 * s;
                u[2].c[idx] -= k3 * s;
            }
        }
    }
}

double divergence_residual(const VectorField3& u) {
    const Domain& d = *u[0].dom;
    const int n1 = d.resolution(0), n2 = d.resolution(1), n3 = d.resolution(2);
    double worst = 0.0;
    for (int m1 = 0; m1 < n1; ++m1) {
        const double k1 = d.wavenumber(0, m1);
        for (int m2 = 0; m2 < n2; ++m2) {
            const double k2 = d.wavenumber(1, m2);
            for (int m3 = 0; m3 < n3; ++m3) {
                const double k3 = d.wavenumber(2, m3);
                const std::size_t idx =
                    (std::size_t(m1) * n2 + m2) * n3 + m3;
                worst = std::max(worst,
                                 std::abs(k1 * u[0].c[idx] + k2 * u[1].c[idx] +
                                          k3 * u[2].c[idx]));
            }
        }
    }
    return worst;
}

Velocity3D embed_2d_in_3d(const Velocity2D& w) {
    const Domain& d = *w.psi.dom;
    Velocity3D out(d);
    const VectorField2 v = velocity_components(w);
    const int n1 = d.resolution(0), n2 = d.resolution(1);
    for (int c = 0; c < 2; ++c)
        for (int m1 = 0; m1 < n1; ++m1)
            for (int m2 = 0; m2 < n2; ++m2)
                out.u[c].at(m1, m2, 0) = v[c].at(m1, m2);
    return out;
}

// ============================================================================
// Initial data
// ============================================================================

State3D init_3d(const Domain& d, const InitialData3D& data,
                const State2D* embed_from) {
    State3D s;
    Velocity3D v(d);
    switch (data.kind) {
        case InitialData3D::Kind::Zero: break;
        case InitialData3D::Kind::Modes:
            for (const auto& m : data.modes) {
                require(m.component >= 0 && m.component < 3,
                        "init_3d: component out of range");
                const Parity3 p = Domain::velocity_parity3(m.component);
                const int mm[3] = {m.m1, m.m2, m.m3};
                for (int ax = 0; ax < 3; ++ax) {
                    require(mm[ax] >= 0 && mm[ax] < d.resolution(ax),
                            "init_3d: mode out of range");
                    require(!(p[ax] == Parity::Sin && mm[ax] == 0),
                            "init_3d: sine-parity mode 0 is not representable");
                }
                v.u[m.component].at(m.m1, m.m2, m.m3) += m.amp;
            }
            break;
        case InitialData3D::Kind::Random:
            v = random_divfree3(d, data.seed, data.max_mode);
            break;
        case InitialData3D::Kind::Embed2D: {
            require(embed_from != nullptr,
                    "init_3d: Embed2D requires a 2D state");
            Velocity2D w;
            w.psi = embed_from->psi;
            v = embed_2d_in_3d(w);
            break;
        }
    }
    leray_project(v.u);
    if (data.scale_norm != InitialData3D::ScaleNorm::None) {
        const double cur = data.scale_norm == InitialData3D::ScaleNorm::L2sq
                               ? l2sq(v.u)
                               : h1sq(v.u);
        require(cur > 0.0, "init_3d: cannot rescale a zero field");
        const double f = std::sqrt(data.scale_target / cur);
        for (auto& comp : v.u)
            for (double& c : comp.c) c *= f;
    }
    s.u = std::move(v.u);
    return s;
}

// ============================================================================
// Coupled stepper
// ============================================================================

CoupledStepper::CoupledStepper(const Domain& d, const ForcingSpec& h,
                               const ForcingSpec& g)
    : dom_(&d), base_(d, h), g_(g, d) {
    lam3_.resize(d.size3());
    for (int m1 = 0; m1 < d.resolution(0); ++m1) {
        const double k1 = d.wavenumber(0, m1);
        for (int m2 = 0; m2 < d.resolution(1); ++m2) {
            const double k2 = d.wavenumber(1, m2);
            for (int m3 = 0; m3 < d.resolution(2); ++m3) {
                const double k3 = d.wavenumber(2, m3);
                lam3_[(std::size_t(m1) * d.resolution(1) + m2) *
                          d.resolution(2) +
                      m3] = k1 * k1 + k2 * k2 + k3 * k3;
            }
        }
    }
}

// N(u) = P[-(u+w).grad u - u.grad w + g], dealiased; w is the embedded base
// stage (x3-independent), so its values broadcast along the axial axis.
VectorField3 CoupledStepper::nonlinear(const VectorField3& u,
                                       const ScalarField2& omega2, double t) {
    const Domain& d = *dom_;
    const int n1 = d.resolution(0), n2 = d.resolution(1), n3 = d.resolution(2);
    const std::size_t sz = d.size3();

    // perturbation values and gradients
    std::array<std::vector<double>, 3> uv;
    std::array<std::array<std::vector<double>, 3>, 3> duv;
    for (int i = 0; i < 3; ++i) {
        ScalarField3 ui = u[i];
        dealias3(d, ui.c);
        uv[i] = to_values(ui);
        for (int j = 0; j < 3; ++j) {
            ScalarField3 g = derivative(u[i], j);
            dealias3(d, g.c);
            duv[i][j] = to_values(g);
        }
    }

    // base values and gradients on the cross-section grid
    Velocity2D w;
    w.psi = stream_from_vorticity(omega2);
    VectorField2 wc = velocity_components(w);
    std::array<std::vector<double>, 2> wv;
    std::array<std::array<std::vector<double>, 2>, 2> dwv;
    for (int i = 0; i < 2; ++i) {
        ScalarField2 wi = wc[i];
        dealias2(d, wi.c);
        wv[i] = to_values(wi);
        for (int j = 0; j < 2; ++j) {
            ScalarField2 g = derivative(wc[i], j);
            dealias2(d, g.c);
            dwv[i][j] = to_values(g);
        }
    }

    VectorField3 out;
    std::vector<double> f(sz);
    for (int i = 0; i < 3; ++i) {
        for (int j1 = 0; j1 < n1; ++j1)
            for (int j2 = 0; j2 < n2; ++j2) {
                const std::size_t i2 = std::size_t(j1) * n2 + j2;
                const double w0 = wv[0][i2], w1 = wv[1][i2];
                const double dw0 = i < 2 ? dwv[i][0][i2] : 0.0;
                const double dw1 = i < 2 ? dwv[i][1][i2] : 0.0;
                const std::size_t base = i2 * n3;
                for (int j3 = 0; j3 < n3; ++j3) {
                    const std::size_t s = base + j3;
                    double acc = (uv[0][s] + w0) * duv[i][0][s] +
                                 (uv[1][s] + w1) * duv[i][1][s] +
                                 uv[2][s] * duv[i][2][s];
                    if (i < 2) acc += uv[0][s] * dw0 + uv[1][s] * dw1;
                    f[s] = -acc;
                }
            }
        out[i] = from_values(d, Domain::velocity_parity3(i), f);
        dealias3(d, out[i].c);
    }
    leray_project(out);
    g_.add_projected(t, {out[0].c, out[1].c, out[2].c});
    return out;
}

void CoupledStepper::check_cfl(const VectorField3& u,
                               const ScalarField2& omega2, double dt) const {
    const Domain& d = *dom_;
    Velocity2D w;
    w.psi = stream_from_vorticity(omega2);
    const VectorField2 wc = velocity_components(w);
    const int n3 = d.resolution(2);
    for (int i = 0; i < 3; ++i) {
        const std::vector<double> uvi = to_values(u[i]);
        double vmax = 0.0;
        if (i < 2) {
            const std::vector<double> wvi = to_values(wc[i]);
            for (std::size_t i2 = 0; i2 < wvi.size(); ++i2)
                for (int j3 = 0; j3 < n3; ++j3)
                    vmax = std::max(
                        vmax, std::abs(uvi[i2 * n3 + j3] + wvi[i2]));
        } else {
            for (double x : uvi) vmax = std::max(vmax, std::abs(x));
        }
        const double h = d.length(i) / d.resolution(i);
        if (vmax > 0.0 && dt > h / vmax)
            throw std::runtime_error(
                "step: dt violates the advective CFL bound");
    }
}

void CoupledStepper::step(State2D& w, State3D& u, double dt) {
    require(dt > 0.0, "step: dt must be positive");
    require(std::abs(w.t - u.t) <= 1e-9 * (1.0 + std::abs(u.t)),
            "step: base and perturbation states are desynchronized");
    const Domain& d = *dom_;
    const double nu = d.spec().nu;
    const std::size_t n = d.size3();

    if (dt != cached_dt_) {
        ehalf_.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            ehalf_[i] = std::exp(-nu * lam3_[i] * 0.5 * dt);
        cached_dt_ = dt;
    }
    const std::vector<double>& eh = ehalf_;

    const detail::Stages2D bs = base_.step_detail(w, dt);
    check_cfl(u.u, bs.s0, dt);

    const VectorField3 k1 = nonlinear(u.u, bs.s0, u.t);

    Velocity3D s1(d);
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < n; ++i)
            s1.u[c].c[i] = eh[i] * (u.u[c].c[i] + 0.5 * dt * k1[c].c[i]);
    leray_project(s1.u);
    max_div_ = std::max(max_div_, divergence_residual(s1.u));
    const VectorField3 k2 = nonlinear(s1.u, bs.s1, u.t + 0.5 * dt);

    Velocity3D s2(d);
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < n; ++i) {
            const double e1 = eh[i] * eh[i];
            s2.u[c].c[i] = e1 * (u.u[c].c[i] - dt * k1[c].c[i]) +
                           2.0 * dt * eh[i] * k2[c].c[i];
        }
    leray_project(s2.u);
    max_div_ = std::max(max_div_, divergence_residual(s2.u));
    const VectorField3 k3 = nonlinear(s2.u, bs.s2, u.t + dt);

    Velocity3D un(d);
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < n; ++i) {
            const double e1 = eh[i] * eh[i];
            un.u[c].c[i] =
                e1 * u.u[c].c[i] + dt * ((1.0 / 6.0) * e1 * k1[c].c[i] +
                                         (2.0 / 3.0) * eh[i] * k2[c].c[i] +
                                         (1.0 / 6.0) * k3[c].c[i]);
        }
    leray_project(un.u);
    max_div_ = std::max(max_div_, divergence_residual(un.u));
    check_finite3(un.u, "step_3d");

    w = bs.next;
    u.u = std::move(un.u);
    u.t = w.t;
    u.k = w.k;
}

State3D step_3d(const Domain& d, const State3D& u, const State2D& w,
                const ForcingSpec& g, const ForcingSpec& h, double dt) {
    CoupledStepper stepper(d, h, g);
    State2D wc = w;
    State3D uc = u;
    stepper.step(wc, uc, dt);
    return uc;
}

// ============================================================================
// Sampling and runs
// ============================================================================

Sample3D sample_3d(const Domain& d, const State3D& u, const State2D& w,
                   const CompiledForcing3& g, const RunOptions3D& opt) {
    Sample3D s;
    s.t = u.t;
    s.k = u.k;
    const VectorField3 r = rot3(u.u);
    s.X2 = l2sq(r);
    s.Y2 = l2sq(rot3(r));
    s.uL2 = std::sqrt(l2sq(u.u));
    s.uH1 = std::sqrt(h1sq(u.u));
    const double cnu = opt.c_generic / d.spec().nu;
    s.G2 = cnu * g.l2sq_normalized(u.t);
    Velocity2D wv;
    wv.psi = w.psi;
    const double w1s = w1sigma_norm(velocity_components(wv), opt.sigma_plus);
    s.A2 = cnu * w1s * w1s;
    return s;
}

StabilityRunResult run_stability(const Domain& d, const State2D& base0,
                                 const State3D& u0, const ForcingSpec& h,
                                 const ForcingSpec& g,
                                 const RunOptions3D& opt) {
    require(opt.k_max >= 1, "run_stability: k_max must be >= 1");
    require(opt.dt > 0.0, "run_stability: dt must be positive");
    require(opt.stride >= 1, "run_stability: stride must be >= 1");
    const double T = d.spec().T;
    const double k0f = base0.t / T;
    require(std::abs(k0f - std::round(k0f)) < 1e-9,
            "run_stability: states must sit on an interval boundary");
    const int k0 = int(std::round(k0f));
    const int steps = std::max(1, int(std::round(T / opt.dt)));
    const double dt = T / steps;

    CoupledStepper stepper(d, h, g);
    StabilityRunResult res;
    res.dt_effective = dt;
    res.base_log.T = T;
    res.base_log.sigma = opt.sigma;
    res.log.T = T;

    State2D w = base0;
    State3D u = u0;
    w.k = u.k = k0;
    res.base_log.samples.push_back(
        sample_2d(d, w, stepper.forcing2(), opt.sigma));
    res.log.samples.push_back(sample_3d(d, u, w, stepper.forcing3(), opt));
    for (int k = k0; k < k0 + opt.k_max; ++k) {
        for (int j = 1; j <= steps; ++j) {
            stepper.step(w, u, dt);
            w.t = u.t = k * T + j * dt;
            w.k = u.k = (j == steps) ? k + 1 : k;
            if (j % opt.stride == 0 || j == steps) {
                res.base_log.samples.push_back(
                    sample_2d(d, w, stepper.forcing2(), opt.sigma));
                res.log.samples.push_back(
                    sample_3d(d, u, w, stepper.forcing3(), opt));
            }
        }
    }
    res.max_divergence_residual = stepper.max_divergence_residual();
    res.base_final = std::move(w);
    res.pert_final = std::move(u);
    return res;
}

// ============================================================================
// CSV
// ============================================================================

void StabilityLog::write_csv(std::ostream& os) const {
    os << "t,k,X2,Y2,uL2,uH1,G2,A2\n";
    char buf[400];
    for (const Sample3D& s : samples) {
        std::snprintf(buf, sizeof buf,
                      "%.17g,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", s.t,
                      s.k, s.X2, s.Y2, s.uL2, s.uH1, s.G2, s.A2);
        os << buf;
    }
}

StabilityLog StabilityLog::read_csv(std::istream& is, double T) {
    StabilityLog log;
    log.T = T;
    std::string line;
    if (!std::getline(is, line))
        throw std::invalid_argument("stability csv: empty stream");
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        Sample3D s;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        if (!(row >> s.t >> s.k >> s.X2 >> s.Y2 >> s.uL2 >> s.uH1 >> s.G2 >>
              s.A2))
            throw std::invalid_argument("stability csv: malformed row");
        log.samples.push_back(s);
    }
    return log;
}

}  // namespace slipflow
