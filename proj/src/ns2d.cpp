/// @file ns2d.cpp

#include "slipflow/ns2d.hpp"

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

ScalarField2 psi_from_omega(const ScalarField2& omega) {
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

void check_finite(const ScalarField2& f, const char* what) {
    for (double c : f.c)
        if (!std::isfinite(c))
            throw std::runtime_error(std::string(what) +
                                     ": non-finite value (blow-up guard)");
}

}  // namespace

State2D init_2d(const Domain& d, const InitialData2D& data) {
    State2D s;
    s.psi = ScalarField2(d, Domain::stream_parity);
    switch (data.kind) {
        case InitialData2D::Kind::Zero: break;
        case InitialData2D::Kind::TaylorGreen:
            s.psi.at(1, 1) = -data.amplitude;
            break;
        case InitialData2D::Kind::Random: {
            Velocity2D w = random_stream(d, data.seed, data.max_mode);
            const double e = l2sq(velocity_components(w));
            require(e > 0.0, "init_2d: random draw produced a zero field");
            const double scale = std::sqrt(data.energy / e);
            for (double& c : w.psi.c) c *= scale;
            s.psi = std::move(w.psi);
            break;
        }
        case InitialData2D::Kind::Modes:
            for (const auto& m : data.modes) {
                require(m.m1 >= 1 && m.m1 < d.resolution(0) && m.m2 >= 1 &&
                            m.m2 < d.resolution(1),
                        "init_2d: mode out of range");
                s.psi.at(m.m1, m.m2) += m.psi;
            }
            break;
    }
    s.omega = laplacian(s.psi);
    return s;
}

// ============================================================================
// Stepper
// ============================================================================

namespace detail {

Stepper2D::Stepper2D(const Domain& d, const ForcingSpec& h)
    : dom_(&d), forcing_(h, d) {
    lam_.resize(d.size2());
    for (int m1 = 0; m1 < d.resolution(0); ++m1) {
        const double k1 = d.wavenumber(0, m1);
        for (int m2 = 0; m2 < d.resolution(1); ++m2) {
            const double k2 = d.wavenumber(1, m2);
            lam_[std::size_t(m1) * d.resolution(1) + m2] = k1 * k1 + k2 * k2;
        }
    }
}

// N(omega, t) = -w . grad omega + rot2(hbar), dealiased.
std::vector<double> Stepper2D::nonlinear(const ScalarField2& omega,
                                         double t) const {
    const Domain& d = *dom_;
    ScalarField2 om = omega;
    om.parity = Domain::stream_parity;
    Velocity2D w;
    w.psi = psi_from_omega(om);
    ScalarField2 adv = advect(velocity_components(w), om);
    std::vector<double> rhs(d.size2());
    for (std::size_t s = 0; s < rhs.size(); ++s) rhs[s] = -adv.c[s];
    forcing_.add_rot2(t, rhs);
    return rhs;
}

void Stepper2D::check_cfl(const ScalarField2& omega, double dt) const {
    const Domain& d = *dom_;
    Velocity2D w;
    w.psi = psi_from_omega(omega);
    const VectorField2 v = velocity_components(w);
    for (int i = 0; i < 2; ++i) {
        double vmax = 0.0;
        for (double x : to_values(v[i])) vmax = std::max(vmax, std::abs(x));
        const double h = d.length(i) / d.resolution(i);
        if (vmax > 0.0 && dt > h / vmax)
            throw std::runtime_error(
                "step: dt violates the advective CFL bound");
    }
}

Stages2D Stepper2D::step_detail(const State2D& s, double dt) const {
    require(dt > 0.0, "step: dt must be positive");
    const Domain& d = *dom_;
    const double nu = d.spec().nu;
    check_cfl(s.omega, dt);

    if (dt != cached_dt_) {
        ehalf_.resize(d.size2());
        for (std::size_t i = 0; i < ehalf_.size(); ++i)
            ehalf_[i] = std::exp(-nu * lam_[i] * 0.5 * dt);
        cached_dt_ = dt;
    }
    const std::vector<double>& eh = ehalf_;
    const std::size_t n = d.size2();

    Stages2D st;
    st.s0 = s.omega;
    const std::vector<double> k1 = nonlinear(st.s0, s.t);

    // stage at t + dt/2
    st.s1 = ScalarField2(d, Domain::stream_parity);
    for (std::size_t i = 0; i < n; ++i)
        st.s1.c[i] = eh[i] * (st.s0.c[i] + 0.5 * dt * k1[i]);
    const std::vector<double> k2 = nonlinear(st.s1, s.t + 0.5 * dt);

    // stage at t + dt
    st.s2 = ScalarField2(d, Domain::stream_parity);
    for (std::size_t i = 0; i < n; ++i) {
        const double e1 = eh[i] * eh[i];
        st.s2.c[i] = e1 * (st.s0.c[i] - dt * k1[i]) +
                     2.0 * dt * eh[i] * k2[i];
    }
    const std::vector<double> k3 = nonlinear(st.s2, s.t + dt);

    State2D next;
    next.omega = ScalarField2(d, Domain::stream_parity);
    for (std::size_t i = 0; i < n; ++i) {
        const double e1 = eh[i] * eh[i];
        next.omega.c[i] =
            e1 * st.s0.c[i] + dt * ((1.0 / 6.0) * e1 * k1[i] +
                                    (2.0 / 3.0) * eh[i] * k2[i] +
                                    (1.0 / 6.0) * k3[i]);
    }
    check_finite(next.omega, "step_2d");
    next.psi = psi_from_omega(next.omega);
    next.t = s.t + dt;
    next.k = int(std::floor(next.t / d.spec().T + 1e-9));
    st.next = std::move(next);
    return st;
}

State2D Stepper2D::step(const State2D& s, double dt) const {
    return step_detail(s, dt).next;
}

}  // namespace detail

State2D step_2d(const Domain& d, const State2D& s, const ForcingSpec& h,
                double dt) {
    detail::Stepper2D stepper(d, h);
    return stepper.step(s, dt);
}

Sample2D sample_2d(const Domain& d, const State2D& s,
                   const CompiledForcing2& h, double sigma) {
    Sample2D out;
    out.t = s.t;
    out.k = s.k;
    Velocity2D w;
    w.psi = s.psi;
    const VectorField2 v = velocity_components(w);
    out.E = std::sqrt(l2sq(v));
    out.H1 = std::sqrt(h1sq(v));
    out.enstrophy = std::sqrt(l2sq(s.omega));
    out.palinstrophy = std::sqrt(h1sq(s.omega) - l2sq(s.omega));
    out.W1sigma = w1sigma_norm(v, sigma);
    out.force_L2 = std::sqrt(h.l2sq_normalized(s.t));
    out.force_Lsigma = h.empty() ? 0.0 : h.lsigma_normalized(s.t, sigma);
    return out;
}

Run2DResult run_2d(const Domain& d, const State2D& start,
                   const ForcingSpec& h, const RunOptions2D& opt) {
    require(opt.k_max >= 1, "run_2d: k_max must be >= 1");
    require(opt.dt > 0.0, "run_2d: dt must be positive");
    require(opt.stride >= 1, "run_2d: stride must be >= 1");
    const double T = d.spec().T;
    const double k0f = start.t / T;
    require(std::abs(k0f - std::round(k0f)) < 1e-9,
            "run_2d: state must sit on an interval boundary");
    const int k0 = int(std::round(k0f));

    const int steps = std::max(1, int(std::round(T / opt.dt)));
    const double dt = T / steps;

    detail::Stepper2D stepper(d, h);
    Run2DResult res;
    res.dt_effective = dt;
    res.log.T = T;
    res.log.sigma = opt.sigma;

    State2D s = start;
    s.k = k0;
    res.log.samples.push_back(sample_2d(d, s, stepper.forcing(), opt.sigma));
    for (int k = k0; k < k0 + opt.k_max; ++k) {
        for (int j = 1; j <= steps; ++j) {
            s = stepper.step(s, dt);
            // keep t exact on the uniform grid (no accumulation drift)
            s.t = k * T + j * dt;
            s.k = (j == steps) ? k + 1 : k;
            if (j % opt.stride == 0 || j == steps)
                res.log.samples.push_back(
                    sample_2d(d, s, stepper.forcing(), opt.sigma));
        }
    }
    res.final = std::move(s);
    return res;
}

// ============================================================================
// CSV
// ============================================================================

void TrajectoryLog::write_csv(std::ostream& os) const {
    os << "t,k,E,H1,enstrophy,palinstrophy,W1sigma,force_L2,force_Lsigma\n";
    char buf[512];
    for (const Sample2D& s : samples) {
        std::snprintf(buf, sizeof buf,
                      "%.17g,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                      s.t, s.k, s.E, s.H1, s.enstrophy, s.palinstrophy,
                      s.W1sigma, s.force_L2, s.force_Lsigma);
        os << buf;
    }
}

TrajectoryLog TrajectoryLog::read_csv(std::istream& is, double T,
                                      double sigma) {
    TrajectoryLog log;
    log.T = T;
    log.sigma = sigma;
    std::string line;
    if (!std::getline(is, line))
        throw std::invalid_argument("trajectory csv: empty stream");
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        Sample2D s;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        if (!(row >> s.t >> s.k >> s.E >> s.H1 >> s.enstrophy >>
              s.palinstrophy >> s.W1sigma >> s.force_L2 >> s.force_Lsigma))
            throw std::invalid_argument("trajectory csv: malformed row");
        log.samples.push_back(s);
    }
    return log;
}

}  // namespace slipflow
