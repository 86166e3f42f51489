/// @file forcing.cpp

#include "slipflow/forcing.hpp"

#include <cmath>
#include <stdexcept>

#include "slipflow/ns3d.hpp"

namespace slipflow {

double ForcingProfile::value(double t) const {
    switch (type) {
        case Type::Constant: return 1.0;
        case Type::Sinusoidal: return std::sin(freq * t + phase);
    }
    return 0.0;
}

void ForcingSpec::validate(const Domain& d, int dims) const {
    for (const ForcingEntry& e : entries) {
        if (e.component < 0 || e.component >= dims)
            throw std::invalid_argument("forcing: component out of range");
        if (!std::isfinite(e.amplitude))
            throw std::invalid_argument("forcing: amplitude must be finite");
        const auto p3 = Domain::velocity_parity3(e.component);
        for (int ax = 0; ax < dims; ++ax) {
            const int m = e.mode[ax];
            if (m < 0 || m >= d.resolution(ax))
                throw std::invalid_argument(
                    "forcing: mode index out of range");
            const Parity p = dims == 3
                                 ? p3[ax]
                                 : Domain::velocity_parity2(e.component)[ax];
            if (p == Parity::Sin && m == 0)
                throw std::invalid_argument(
                    "forcing: sine-parity mode 0 is not representable");
        }
        if (dims == 2 && e.mode[2] != 0)
            throw std::invalid_argument("forcing: 2D mode has a third index");
    }
}

VectorField2 forcing_field2(const ForcingSpec& spec, const Domain& d,
                            double t) {
    spec.validate(d, 2);
    VectorField2 f = make_velocity2(d);
    for (const ForcingEntry& e : spec.entries)
        f[e.component].at(e.mode[0], e.mode[1]) +=
            e.amplitude * e.profile.value(t);
    return f;
}

VectorField3 forcing_field3(const ForcingSpec& spec, const Domain& d,
                            double t) {
    spec.validate(d, 3);
    Velocity3D f(d);
    for (const ForcingEntry& e : spec.entries)
        f.u[e.component].at(e.mode[0], e.mode[1], e.mode[2]) +=
            e.amplitude * e.profile.value(t);
    return f.u;
}

// ============================================================================
// 2D compilation
// ============================================================================

CompiledForcing2::CompiledForcing2(const ForcingSpec& spec, const Domain& d)
    : dom_(&d), normalize_(spec.normalize) {
    spec.validate(d, 2);
    for (const ForcingEntry& e : spec.entries) {
        Group* g = nullptr;
        for (Group& cand : groups_)
            if (cand.profile == e.profile) {
                g = &cand;
                break;
            }
        if (!g) {
            groups_.push_back(Group{e.profile, make_velocity2(d),
                                    ScalarField2(d, Domain::stream_parity),
                                    {}});
            g = &groups_.back();
        }
        g->h[e.component].at(e.mode[0], e.mode[1]) += e.amplitude;
    }
    for (Group& g : groups_) {
        g.rot2h = rot2(g.h);
        if (normalize_)
            g.mean = {field_mean(g.h[0]), field_mean(g.h[1])};
    }
    const std::size_t n = groups_.size();
    gram_.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double ip = 0.0;
            for (int c = 0; c < 2; ++c) {
                const ScalarField2& a = groups_[i].h[c];
                const ScalarField2& b = groups_[j].h[c];
                for (int m1 = 0; m1 < a.n1(); ++m1)
                    for (int m2 = 0; m2 < a.n2(); ++m2)
                        ip += a.at(m1, m2) * b.at(m1, m2) *
                              d.mode_weight(0, a.parity[0], m1) *
                              d.mode_weight(1, a.parity[1], m2);
            }
            gram_[i * n + j] = ip;
        }
}

void CompiledForcing2::add_rot2(double t, std::span<double> coeffs) const {
    for (const Group& g : groups_) {
        const double p = g.profile.value(t);
        if (p == 0.0) continue;
        for (std::size_t s = 0; s < coeffs.size(); ++s)
            coeffs[s] += p * g.rot2h.c[s];
    }
}

double CompiledForcing2::l2sq_normalized(double t) const {
    if (groups_.empty()) return 0.0;
    const std::size_t n = groups_.size();
    std::vector<double> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = groups_[i].profile.value(t);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            acc += p[i] * p[j] * gram_[i * n + j];
    if (normalize_) {
        const double vol = dom_->length(0) * dom_->length(1);
        for (int c = 0; c < 2; ++c) {
            double m = 0.0;
            for (std::size_t i = 0; i < n; ++i) m += p[i] * groups_[i].mean[c];
            acc -= m * m * vol;
        }
    }
    return std::max(acc, 0.0);
}

double CompiledForcing2::lsigma_normalized(double t, double sigma) const {
    if (groups_.empty()) return 0.0;
    VectorField2 f = make_velocity2(*dom_);
    std::array<double, 2> mean{};
    for (const Group& g : groups_) {
        const double p = g.profile.value(t);
        for (int c = 0; c < 2; ++c) {
            for (std::size_t s = 0; s < f[c].c.size(); ++s)
                f[c].c[s] += p * g.h[c].c[s];
            mean[c] += p * g.mean[c];
        }
    }
    if (!normalize_) mean = {0.0, 0.0};
    MeanNormalized2 nf{std::move(f), mean};
    return lsigma_norm(nf, sigma);
}

// ============================================================================
// 3D compilation
// ============================================================================

CompiledForcing3::CompiledForcing3(const ForcingSpec& spec, const Domain& d)
    : dom_(&d), normalize_(spec.normalize) {
    spec.validate(d, 3);
    for (const ForcingEntry& e : spec.entries) {
        Group* g = nullptr;
        for (Group& cand : groups_)
            if (cand.profile == e.profile) {
                g = &cand;
                break;
            }
        if (!g) {
            Velocity3D z(d);
            groups_.push_back(Group{e.profile, z.u, z.u, {}});
            g = &groups_.back();
        }
        g->g[e.component].at(e.mode[0], e.mode[1], e.mode[2]) += e.amplitude;
    }
    for (Group& g : groups_) {
        g.pg = g.g;
        leray_project(g.pg);
        if (normalize_)
            g.mean = {field_mean(g.g[0]), field_mean(g.g[1]),
                      field_mean(g.g[2])};
    }
    const std::size_t n = groups_.size();
    gram_.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double ip = 0.0;
            for (int c = 0; c < 3; ++c) {
                const ScalarField3& a = groups_[i].g[c];
                const ScalarField3& b = groups_[j].g[c];
                for (int m1 = 0; m1 < a.n1(); ++m1)
                    for (int m2 = 0; m2 < a.n2(); ++m2)
                        for (int m3 = 0; m3 < a.n3(); ++m3)
                            ip += a.at(m1, m2, m3) * b.at(m1, m2, m3) *
                                  d.mode_weight(0, a.parity[0], m1) *
                                  d.mode_weight(1, a.parity[1], m2) *
                                  d.mode_weight(2, a.parity[2], m3);
            }
            gram_[i * n + j] = ip;
        }
}

void CompiledForcing3::add_projected(
    double t, std::array<std::span<double>, 3> coeffs) const {
    for (const Group& g : groups_) {
        const double p = g.profile.value(t);
        if (p == 0.0) continue;
        for (int c = 0; c < 3; ++c)
            for (std::size_t s = 0; s < coeffs[c].size(); ++s)
                coeffs[c][s] += p * g.pg[c].c[s];
    }
}

double CompiledForcing3::l2sq_normalized(double t) const {
    if (groups_.empty()) return 0.0;
    const std::size_t n = groups_.size();
    std::vector<double> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = groups_[i].profile.value(t);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            acc += p[i] * p[j] * gram_[i * n + j];
    if (normalize_) {
        const double vol =
            dom_->length(0) * dom_->length(1) * dom_->length(2);
        for (int c = 0; c < 3; ++c) {
            double m = 0.0;
            for (std::size_t i = 0; i < n; ++i) m += p[i] * groups_[i].mean[c];
            acc -= m * m * vol;
        }
    }
    return std::max(acc, 0.0);
}

}  // namespace slipflow
