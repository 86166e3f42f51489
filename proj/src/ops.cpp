/// @file ops.cpp

#include "slipflow/ops.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace slipflow {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

Parity flip(Parity p) { return p == Parity::Sin ? Parity::Cos : Parity::Sin; }

}  // namespace

// ============================================================================
// Exact spectral operators
// ============================================================================

ScalarField2 derivative(const ScalarField2& f, int axis) {
    require(f.dom != nullptr, "derivative: empty field");
    require(axis == 0 || axis == 1, "derivative: bad axis");
    const Domain& d = *f.dom;
    ScalarField2 out(d, f.parity);
    out.parity[axis] = flip(f.parity[axis]);
    const double sgn = f.parity[axis] == Parity::Sin ? 1.0 : -1.0;
    const int n1 = d.resolution(0), n2 = d.resolution(1);
    for (int m1 = 0; m1 < n1; ++m1)
        for (int m2 = 0; m2 < n2; ++m2) {
            const double k = d.wavenumber(axis, axis == 0 ? m1 : m2);
            out.at(m1, m2) = sgn * k * f.at(m1, m2);
        }
    return out;
}

ScalarField3 derivative(const ScalarField3& f, int axis) {
    require(f.dom != nullptr, "derivative: empty field");
    require(axis >= 0 && axis <= 2, "derivative: bad axis");
    const Domain& d = *f.dom;
    ScalarField3 out(d, f.parity);
    out.parity[axis] = flip(f.parity[axis]);
    const double sgn = f.parity[axis] == Parity::Sin ? 1.0 : -1.0;
    const int n1 = d.resolution(0), n2 = d.resolution(1), n3 = d.resolution(2);
    for (int m1 = 0; m1 < n1; ++m1)
        for (int m2 = 0; m2 < n2; ++m2)
            for (int m3 = 0; m3 < n3; ++m3) {
                const int m = axis == 0 ? m1 : (axis == 1 ? m2 : m3);
                out.at(m1, m2, m3) =
                    sgn * d.wavenumber(axis, m) * f.at(m1, m2, m3);
            }
    return out;
}

ScalarField2 laplacian(const ScalarField2& f) {
    const Domain& d = *f.dom;
    ScalarField2 out(d, f.parity);
    const int n1 = d.resolution(0), n2 = d.resolution(1);
    for (int m1 = 0; m1 < n1; ++m1) {
        const double k1 = d.wavenumber(0, m1);
        for (int m2 = 0; m2 < n2; ++m2) {
            const double k2 = d.wavenumber(1, m2);
            out.at(m1, m2) = -(k1 * k1 + k2 * k2) * f.at(m1, m2);
        }
    }
    return out;
}

ScalarField3 laplacian(const ScalarField3& f) {
    const Domain& d = *f.dom;
    ScalarField3 out(d, f.parity);
    const int n1 = d.resolution(0), n2 = d.resolution(1), n3 = d.resolution(2);
    for (int m1 = 0; m1 < n1; ++m1) {
        const double k1 = d.wavenumber(0, m1);
        for (int m2 = 0; m2 < n2; ++m2) {
            const double k2 = d.wavenumber(1, m2);
            for (int m3 = 0; m3 < n3; ++m3) {
                const double k3 = d.wavenumber(2, m3);
                out.at(m1, m2, m3) =
                    -(k1 * k1 + k2 * k2 + k3 * k3) * f.at(m1, m2, m3);
            }
        }
    }
    return out;
}

VectorField2 velocity_components(const Velocity2D& w) {
    VectorField2 v;
    v[0] = derivative(w.psi, 1);
    for (double& x : v[0].c) x = -x;
    v[1] = derivative(w.psi, 0);
    return v;
}

Vorticity2D rot2(const Velocity2D& w) {
    Vorticity2D out(*w.psi.dom);
    out.f = laplacian(w.psi);
    return out;
}

ScalarField2 rot2(const VectorField2& v) {
    ScalarField2 a = derivative(v[1], 0);
    ScalarField2 b = derivative(v[0], 1);
    require(a.parity == b.parity, "rot2: parity mismatch");
    for (std::size_t i = 0; i < a.c.size(); ++i) a.c[i] -= b.c[i];
    return a;
}

VectorField2 tilde_rot(const ScalarField2& phi) {
    VectorField2 out;
    out[0] = derivative(phi, 1);
    out[1] = derivative(phi, 0);
    for (double& x : out[1].c) x = -x;
    return out;
}

VectorField3 rot3(const VectorField3& u) {
    VectorField3 out;
    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3, k = (i + 2) % 3;
        ScalarField3 a = derivative(u[k], j);
        ScalarField3 b = derivative(u[j], k);
        require(a.parity == b.parity, "rot3: parity mismatch");
        for (std::size_t s = 0; s < a.c.size(); ++s) a.c[s] -= b.c[s];
        out[i] = std::move(a);
    }
    return out;
}

ScalarField3 divergence3(const VectorField3& u) {
    ScalarField3 out = derivative(u[0], 0);
    for (int i = 1; i < 3; ++i) {
        ScalarField3 di = derivative(u[i], i);
        require(di.parity == out.parity, "divergence3: parity mismatch");
        for (std::size_t s = 0; s < out.c.size(); ++s) out.c[s] += di.c[s];
    }
    return out;
}

// ============================================================================
// Collocation values
// ============================================================================

std::vector<double> to_values(const ScalarField2& f) {
    std::vector<double> v(f.dom->size2());
    f.dom->backward2(f.c, f.parity, v);
    return v;
}

std::vector<double> to_values_os(const ScalarField2& f) {
    std::vector<double> v(f.dom->size2_os());
    f.dom->backward2_os(f.c, f.parity, v);
    return v;
}

std::vector<double> to_values(const ScalarField3& f) {
    std::vector<double> v(f.dom->size3());
    f.dom->backward3(f.c, f.parity, v);
    return v;
}

std::vector<double> to_values_os(const ScalarField3& f) {
    std::vector<double> v(f.dom->size3_os());
    f.dom->backward3_os(f.c, f.parity, v);
    return v;
}

ScalarField2 from_values(const Domain& d, Parity2 p,
                         std::span<const double> values) {
    ScalarField2 f(d, p);
    d.forward2(values, p, f.c);
    return f;
}

ScalarField3 from_values(const Domain& d, Parity3 p,
                         std::span<const double> values) {
    ScalarField3 f(d, p);
    d.forward3(values, p, f.c);
    return f;
}

namespace {

inline double basis1d(Parity p, double kappa, double x) {
    return p == Parity::Sin ? std::sin(kappa * x) : std::cos(kappa * x);
}

}  // namespace

double eval_at(const ScalarField2& f, double x1, double x2) {
    const Domain& d = *f.dom;
    const int n1 = d.resolution(0), n2 = d.resolution(1);
    std::vector<double> b2(n2);
    for (int m2 = 0; m2 < n2; ++m2)
        b2[m2] = basis1d(f.parity[1], d.wavenumber(1, m2), x2);
    double acc = 0.0;
    for (int m1 = 0; m1 < n1; ++m1) {
        const double b1 = basis1d(f.parity[0], d.wavenumber(0, m1), x1);
        if (b1 == 0.0) continue;
        double row = 0.0;
        for (int m2 = 0; m2 < n2; ++m2) row += f.at(m1, m2) * b2[m2];
        acc += b1 * row;
    }
    return acc;
}

double eval_at(const ScalarField3& f, double x1, double x2, double x3) {
    const Domain& d = *f.dom;
    const int n1 = d.resolution(0), n2 = d.resolution(1), n3 = d.resolution(2);
    std::vector<double> b2(n2), b3(n3);
    for (int m2 = 0; m2 < n2; ++m2)
        b2[m2] = basis1d(f.parity[1], d.wavenumber(1, m2), x2);
    for (int m3 = 0; m3 < n3; ++m3)
        b3[m3] = basis1d(f.parity[2], d.wavenumber(2, m3), x3);
    double acc = 0.0;
    for (int m1 = 0; m1 < n1; ++m1) {
        const double b1 = basis1d(f.parity[0], d.wavenumber(0, m1), x1);
        if (b1 == 0.0) continue;
        double plane = 0.0;
        for (int m2 = 0; m2 < n2; ++m2) {
            double row = 0.0;
            for (int m3 = 0; m3 < n3; ++m3)
                row += f.at(m1, m2, m3) * b3[m3];
            plane += b2[m2] * row;
        }
        acc += b1 * plane;
    }
    return acc;
}

// ============================================================================
// Advection
// ============================================================================

ScalarField2 advect(const VectorField2& a, const ScalarField2& q) {
    const Domain& d = *q.dom;
    require(a[0].dom == q.dom && a[1].dom == q.dom,
            "advect: fields live on different domains");
    std::vector<double> prod(d.size2(), 0.0);
    for (int i = 0; i < 2; ++i) {
        ScalarField2 ai = a[i];
        dealias2(d, ai.c);
        ScalarField2 dq = derivative(q, i);
        dealias2(d, dq.c);
        for (int ax = 0; ax < 2; ++ax)
            require(parity_mul(ai.parity[ax], dq.parity[ax]) == q.parity[ax],
                    "advect: advecting field has incompatible parity");
        const std::vector<double> av = to_values(ai);
        const std::vector<double> dv = to_values(dq);
        for (std::size_t s = 0; s < prod.size(); ++s) prod[s] += av[s] * dv[s];
    }
    ScalarField2 out = from_values(d, q.parity, prod);
    dealias2(d, out.c);
    return out;
}

ScalarField3 advect(const VectorField3& a, const ScalarField3& q) {
    const Domain& d = *q.dom;
    require(a[0].dom == q.dom && a[1].dom == q.dom && a[2].dom == q.dom,
            "advect: fields live on different domains");
    std::vector<double> prod(d.size3(), 0.0);
    for (int i = 0; i < 3; ++i) {
        ScalarField3 ai = a[i];
        dealias3(d, ai.c);
        ScalarField3 dq = derivative(q, i);
        dealias3(d, dq.c);
        for (int ax = 0; ax < 3; ++ax)
            require(parity_mul(ai.parity[ax], dq.parity[ax]) == q.parity[ax],
                    "advect: advecting field has incompatible parity");
        const std::vector<double> av = to_values(ai);
        const std::vector<double> dv = to_values(dq);
        for (std::size_t s = 0; s < prod.size(); ++s) prod[s] += av[s] * dv[s];
    }
    ScalarField3 out = from_values(d, q.parity, prod);
    dealias3(d, out.c);
    return out;
}

// ============================================================================
// Norms
// ============================================================================

namespace {

// Sum over |alpha| <= s of kappa^(2 alpha); s = 0, 1, 2.
inline double sobolev_factor2(double k1, double k2, int s) {
    double f = 1.0;
    if (s >= 1) f += k1 * k1 + k2 * k2;
    if (s >= 2)
        f += k1 * k1 * k1 * k1 + k1 * k1 * k2 * k2 + k2 * k2 * k2 * k2;
    return f;
}

inline double sobolev_factor3(double k1, double k2, double k3, int s) {
    double f = 1.0;
    const double a = k1 * k1, b = k2 * k2, c = k3 * k3;
    if (s >= 1) f += a + b + c;
    if (s >= 2) f += a * a + b * b + c * c + a * b + a * c + b * c;
    return f;
}

double sobolev_sq2(const ScalarField2& f, int s) {
    const Domain& d = *f.dom;
    const int n1 = d.resolution(0), n2 = d.resolution(1);
    double acc = 0.0;
    for (int m1 = 0; m1 < n1; ++m1) {
        const double w1 = d.mode_weight(0, f.parity[0], m1);
        const double k1 = d.wavenumber(0, m1);
        for (int m2 = 0; m2 < n2; ++m2) {
            const double c = f.at(m1, m2);
            if (c == 0.0) continue;
            acc += sobolev_factor2(k1, d.wavenumber(1, m2), s) * c * c * w1 *
                   d.mode_weight(1, f.parity[1], m2);
        }
    }
    return acc;
}

double sobolev_sq3(const ScalarField3& f, int s) {
    const Domain& d = *f.dom;
    const int n1 = d.resolution(0), n2 = d.resolution(1), n3 = d.resolution(2);
    double acc = 0.0;
    for (int m1 = 0; m1 < n1; ++m1) {
        const double w1 = d.mode_weight(0, f.parity[0], m1);
        const double k1 = d.wavenumber(0, m1);
        for (int m2 = 0; m2 < n2; ++m2) {
            const double w12 = w1 * d.mode_weight(1, f.parity[1], m2);
            const double k2 = d.wavenumber(1, m2);
            for (int m3 = 0; m3 < n3; ++m3) {
                const double c = f.at(m1, m2, m3);
                if (c == 0.0) continue;
                acc += sobolev_factor3(k1, k2, d.wavenumber(2, m3), s) * c *
                       c * w12 * d.mode_weight(2, f.parity[2], m3);
            }
        }
    }
    return acc;
}

}  // namespace

double l2sq(const ScalarField2& f) { return sobolev_sq2(f, 0); }
double l2sq(const ScalarField3& f) { return sobolev_sq3(f, 0); }
double h1sq(const ScalarField2& f) { return sobolev_sq2(f, 1); }
double h1sq(const ScalarField3& f) { return sobolev_sq3(f, 1); }
double h2sq(const ScalarField2& f) { return sobolev_sq2(f, 2); }
double h2sq(const ScalarField3& f) { return sobolev_sq3(f, 2); }

double l2sq(const VectorField2& v) { return l2sq(v[0]) + l2sq(v[1]); }
double h1sq(const VectorField2& v) { return h1sq(v[0]) + h1sq(v[1]); }
double h2sq(const VectorField2& v) { return h2sq(v[0]) + h2sq(v[1]); }
double l2sq(const VectorField3& v) {
    return l2sq(v[0]) + l2sq(v[1]) + l2sq(v[2]);
}
double h1sq(const VectorField3& v) {
    return h1sq(v[0]) + h1sq(v[1]) + h1sq(v[2]);
}
double h2sq(const VectorField3& v) {
    return h2sq(v[0]) + h2sq(v[1]) + h2sq(v[2]);
}

namespace {

void check_sigma(double sigma) {
    if (!(sigma > 1.0) || !std::isfinite(sigma))
        throw std::invalid_argument("sigma must lie in (1, inf)");
}

double lsigma_from_sq(const std::vector<double>& sq, double cell,
                      double sigma) {
    double acc = 0.0;
    for (double s : sq) acc += std::pow(s, 0.5 * sigma);
    return std::pow(acc * cell, 1.0 / sigma);
}

}  // namespace

double lsigma_norm(const ScalarField2& f, double sigma) {
    check_sigma(sigma);
    std::vector<double> v = to_values_os(f);
    for (double& x : v) x = x * x;
    return lsigma_from_sq(v, f.dom->cell2(true), sigma);
}

double lsigma_norm(const VectorField2& v, double sigma) {
    check_sigma(sigma);
    std::vector<double> a = to_values_os(v[0]);
    const std::vector<double> b = to_values_os(v[1]);
    for (std::size_t i = 0; i < a.size(); ++i)
        a[i] = a[i] * a[i] + b[i] * b[i];
    return lsigma_from_sq(a, v[0].dom->cell2(true), sigma);
}

double lsigma_norm(const ScalarField3& f, double sigma) {
    check_sigma(sigma);
    std::vector<double> v = to_values_os(f);
    for (double& x : v) x = x * x;
    return lsigma_from_sq(v, f.dom->cell3(true), sigma);
}

double lsigma_norm(const VectorField3& v, double sigma) {
    check_sigma(sigma);
    std::vector<double> a = to_values_os(v[0]);
    const std::vector<double> b = to_values_os(v[1]);
    const std::vector<double> c = to_values_os(v[2]);
    for (std::size_t i = 0; i < a.size(); ++i)
        a[i] = a[i] * a[i] + b[i] * b[i] + c[i] * c[i];
    return lsigma_from_sq(a, v[0].dom->cell3(true), sigma);
}

double linf_norm(const ScalarField2& f) {
    double m = 0.0;
    for (double x : to_values_os(f)) m = std::max(m, std::abs(x));
    return m;
}

double linf_norm(const VectorField2& v) {
    std::vector<double> a = to_values_os(v[0]);
    const std::vector<double> b = to_values_os(v[1]);
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, a[i] * a[i] + b[i] * b[i]);
    return std::sqrt(m);
}

double w1sigma_norm(const VectorField2& v, double sigma) {
    check_sigma(sigma);
    const double p = lsigma_norm(v, sigma);
    std::vector<double> g(v[0].dom->size2_os(), 0.0);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const std::vector<double> dv = to_values_os(derivative(v[i], j));
            for (std::size_t s = 0; s < g.size(); ++s) g[s] += dv[s] * dv[s];
        }
    const double q =
        lsigma_from_sq(g, v[0].dom->cell2(true), sigma);
    return std::pow(std::pow(p, sigma) + std::pow(q, sigma), 1.0 / sigma);
}

double w1sigma_norm(const VectorField3& v, double sigma) {
    check_sigma(sigma);
    const double p = lsigma_norm(v, sigma);
    std::vector<double> g(v[0].dom->size3_os(), 0.0);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const std::vector<double> dv = to_values_os(derivative(v[i], j));
            for (std::size_t s = 0; s < g.size(); ++s) g[s] += dv[s] * dv[s];
        }
    const double q = lsigma_from_sq(g, v[0].dom->cell3(true), sigma);
    return std::pow(std::pow(p, sigma) + std::pow(q, sigma), 1.0 / sigma);
}

double norm(const VectorField2& v, NormKind kind, double sigma) {
    switch (kind) {
        case NormKind::L2: return std::sqrt(l2sq(v));
        case NormKind::H1: return std::sqrt(h1sq(v));
        case NormKind::H2: return std::sqrt(h2sq(v));
        case NormKind::Lsigma: return lsigma_norm(v, sigma);
        case NormKind::Linf: return linf_norm(v);
        case NormKind::W1sigma: return w1sigma_norm(v, sigma);
    }
    throw std::invalid_argument("norm: unknown kind");
}

double norm(const VectorField3& v, NormKind kind, double sigma) {
    switch (kind) {
        case NormKind::L2: return std::sqrt(l2sq(v));
        case NormKind::H1: return std::sqrt(h1sq(v));
        case NormKind::H2: return std::sqrt(h2sq(v));
        case NormKind::Lsigma: return lsigma_norm(v, sigma);
        case NormKind::W1sigma: return w1sigma_norm(v, sigma);
        case NormKind::Linf: break;
    }
    throw std::invalid_argument("norm: unknown kind");
}

// ============================================================================
// Mean normalization
// ============================================================================

double field_mean(const ScalarField2& f) {
    const Domain& d = *f.dom;
    const int n1 = d.resolution(0), n2 = d.resolution(1);
    double acc = 0.0;
    for (int m1 = 0; m1 < n1; ++m1) {
        const double i1 = d.mode_integral(0, f.parity[0], m1);
        if (i1 == 0.0) continue;
        for (int m2 = 0; m2 < n2; ++m2) {
            const double i2 = d.mode_integral(1, f.parity[1], m2);
            if (i2 != 0.0) acc += f.at(m1, m2) * i1 * i2;
        }
    }
    return acc / (d.length(0) * d.length(1));
}

double field_mean(const ScalarField3& f) {
    const Domain& d = *f.dom;
    const int n1 = d.resolution(0), n2 = d.resolution(1), n3 = d.resolution(2);
    double acc = 0.0;
    for (int m1 = 0; m1 < n1; ++m1) {
        const double i1 = d.mode_integral(0, f.parity[0], m1);
        if (i1 == 0.0) continue;
        for (int m2 = 0; m2 < n2; ++m2) {
            const double i2 = d.mode_integral(1, f.parity[1], m2);
            if (i2 == 0.0) continue;
            for (int m3 = 0; m3 < n3; ++m3) {
                const double i3 = d.mode_integral(2, f.parity[2], m3);
                if (i3 != 0.0) acc += f.at(m1, m2, m3) * i1 * i2 * i3;
            }
        }
    }
    return acc / (d.length(0) * d.length(1) * d.length(2));
}

MeanNormalized2 mean_normalize(const VectorField2& h) {
    MeanNormalized2 out{h, {field_mean(h[0]), field_mean(h[1])}};
    return out;
}

MeanNormalized3 mean_normalize(const VectorField3& h) {
    MeanNormalized3 out{
        h, {field_mean(h[0]), field_mean(h[1]), field_mean(h[2])}};
    return out;
}

double l2sq(const MeanNormalized2& h) {
    const Domain& d = *h.field[0].dom;
    const double vol = d.length(0) * d.length(1);
    // ||h - mean||^2 = ||h||^2 - |mean|^2 |Omega| since the mean of h is mean.
    double acc = l2sq(h.field);
    for (double m : h.mean) acc -= m * m * vol;
    return std::max(acc, 0.0);
}

double l2sq(const MeanNormalized3& h) {
    const Domain& d = *h.field[0].dom;
    const double vol = d.length(0) * d.length(1) * d.length(2);
    double acc = l2sq(h.field);
    for (double m : h.mean) acc -= m * m * vol;
    return std::max(acc, 0.0);
}

double lsigma_norm(const MeanNormalized2& h, double sigma) {
    check_sigma(sigma);
    std::vector<double> a = to_values_os(h.field[0]);
    const std::vector<double> b = to_values_os(h.field[1]);
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double x = a[i] - h.mean[0];
        const double y = b[i] - h.mean[1];
        a[i] = x * x + y * y;
    }
    return lsigma_from_sq(a, h.field[0].dom->cell2(true), sigma);
}

// ============================================================================
// Identity checks
// ============================================================================

double nonlinear_orthogonality(const Velocity2D& w) {
    const Domain& d = *w.psi.dom;
    const VectorField2 v = velocity_components(w);
    const std::vector<double> w1 = to_values_os(v[0]);
    const std::vector<double> w2 = to_values_os(v[1]);
    const std::vector<double> d11 = to_values_os(derivative(v[0], 0));
    const std::vector<double> d12 = to_values_os(derivative(v[0], 1));
    const std::vector<double> d21 = to_values_os(derivative(v[1], 0));
    const std::vector<double> d22 = to_values_os(derivative(v[1], 1));
    const std::vector<double> l1 = to_values_os(laplacian(v[0]));
    const std::vector<double> l2 = to_values_os(laplacian(v[1]));
    double acc = 0.0;
    for (std::size_t s = 0; s < w1.size(); ++s) {
        acc += (w1[s] * d11[s] + w2[s] * d12[s]) * l1[s] +
               (w1[s] * d21[s] + w2[s] * d22[s]) * l2[s];
    }
    return acc * d.cell2(true);
}

SlipGap navier_slip_gap(const Velocity2D& w) {
    const Domain& d = *w.psi.dom;
    const VectorField2 v = velocity_components(w);
    const ScalarField2 d12 = derivative(v[0], 1);  // w1_{,x2}
    const ScalarField2 d21 = derivative(v[1], 0);  // w2_{,x1}
    SlipGap gap;
    const int m1 = 2 * d.resolution(0), m2 = 2 * d.resolution(1);
    // Flat faces, constant n: the relation reduces to n.D(w).tau = rot2 w
    // (the w_{n,tau} and n_{i,tau} terms vanish identically).  With
    // a = w2_{,x1} and b = w1_{,x2}: n.D.tau = a + b on the x1-faces and
    // -(a + b) on the x2-faces; rot2 w = a - b everywhere.
    auto visit = [&](double x, double y, double face_sign) {
        const double a = eval_at(d21, x, y);
        const double b = eval_at(d12, x, y);
        const double traction = face_sign * (a + b);
        gap.traction_max = std::max(gap.traction_max, std::abs(traction));
        gap.identity_residual =
            std::max(gap.identity_residual, std::abs(traction - (a - b)));
    };
    for (int j = 0; j < m2; ++j) {
        visit(0.0, d.node_os(1, j), 1.0);
        visit(d.length(0), d.node_os(1, j), 1.0);
    }
    for (int j = 0; j < m1; ++j) {
        visit(d.node_os(0, j), 0.0, -1.0);
        visit(d.node_os(0, j), d.length(1), -1.0);
    }
    return gap;
}

}  // namespace slipflow
