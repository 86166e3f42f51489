/// @file domain.cpp
/// @brief Transform plumbing: FFTW DST-II/DCT-II pairs on the midpoint grid.
///
/// Conventions (per axis, N points, length L):
///   sine axis:   f(x) = sum_{m=1}^{N-1} c_m sin(pi m x / L)
///   cosine axis: f(x) = sum_{m=0}^{N-1} c_m cos(pi m x / L)
/// Forward transforms are RODFT10/REDFT10 with normalization 1/N
/// (1/(2N) for the cosine mean mode); backward transforms are
/// RODFT01/REDFT01 with input coefficients pre-scaled by 1/2 (mean mode
/// unscaled).  The pair round-trips exactly on the stored band.

#include "slipflow/domain.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <stdexcept>
#include <string>

namespace slipflow {

namespace {

int parity_index2(Parity2 p) {
    return (p[0] == Parity::Cos ? 2 : 0) + (p[1] == Parity::Cos ? 1 : 0);
}

int parity_index3(Parity3 p) {
    return (p[0] == Parity::Cos ? 4 : 0) + (p[1] == Parity::Cos ? 2 : 0) +
           (p[2] == Parity::Cos ? 1 : 0);
}

fftw_r2r_kind forward_kind(Parity p) {
    return p == Parity::Sin ? FFTW_RODFT10 : FFTW_REDFT10;
}

fftw_r2r_kind backward_kind(Parity p) {
    return p == Parity::Sin ? FFTW_RODFT01 : FFTW_REDFT01;
}

struct Buffer {
    double* ptr = nullptr;
    explicit Buffer(std::size_t n) : ptr(fftw_alloc_real(n)) {
        if (!ptr) throw std::bad_alloc();
    }
    ~Buffer() { fftw_free(ptr); }
    Buffer(const Buffer&) = delete;
    Buffer& operator=(const Buffer&) = delete;
};

}  // namespace

struct Domain::Plans {
    // [parity index] per shape family; forward/backward separately.
    fftw_plan fwd2[4] = {};
    fftw_plan bwd2[4] = {};
    fftw_plan fwd2_os[4] = {};
    fftw_plan bwd2_os[4] = {};
    fftw_plan fwd3[8] = {};
    fftw_plan bwd3[8] = {};
    fftw_plan bwd3_os[8] = {};
    std::vector<fftw_plan> all;
    std::vector<double*> blocks;

    double* grab(std::size_t n) {
        double* p = fftw_alloc_real(n);
        if (!p) throw std::bad_alloc();
        blocks.push_back(p);
        return p;
    }

    fftw_plan make2(int n0, int n1, fftw_r2r_kind k0, fftw_r2r_kind k1) {
        std::size_t n = std::size_t(n0) * n1;
        fftw_plan p = fftw_plan_r2r_2d(n0, n1, grab(n), grab(n), k0, k1,
                                       FFTW_ESTIMATE);
        all.push_back(p);
        return p;
    }

    fftw_plan make3(int n0, int n1, int n2, fftw_r2r_kind k0,
                    fftw_r2r_kind k1, fftw_r2r_kind k2) {
        std::size_t n = std::size_t(n0) * n1 * n2;
        fftw_plan p = fftw_plan_r2r_3d(n0, n1, n2, grab(n), grab(n), k0, k1,
                                       k2, FFTW_ESTIMATE);
        all.push_back(p);
        return p;
    }

    ~Plans() {
        for (fftw_plan p : all) fftw_destroy_plan(p);
        for (double* b : blocks) fftw_free(b);
    }
};

void DomainSpec::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw std::invalid_argument(std::string(name) +
                                        " must be positive and finite");
    };
    positive(L1, "L1");
    positive(L2, "L2");
    positive(a, "a");
    positive(nu, "nu");
    positive(T, "T");
    for (int N : {N1, N2, N3}) {
        if (N % 2 != 0) throw std::invalid_argument("resolution must be even");
        if (N < 8) throw std::invalid_argument("resolution must be >= 8");
    }
}

Domain::Domain(const DomainSpec& spec) : spec_(spec) {
    spec_.validate();
    len_ = {spec_.L1, spec_.L2, 2.0 * spec_.a};
    n_ = {spec_.N1, spec_.N2, spec_.N3};
    for (int axis = 0; axis < 3; ++axis) {
        kappa_[axis].resize(2 * n_[axis]);
        for (int m = 0; m < 2 * n_[axis]; ++m)
            kappa_[axis][m] = M_PI * m / len_[axis];
    }

    plans_ = std::make_unique<Plans>();
    const Parity tab[2] = {Parity::Sin, Parity::Cos};
    for (int i = 0; i < 4; ++i) {
        Parity p0 = tab[(i >> 1) & 1], p1 = tab[i & 1];
        plans_->fwd2[i] = plans_->make2(n_[0], n_[1], forward_kind(p0),
                                        forward_kind(p1));
        plans_->bwd2[i] = plans_->make2(n_[0], n_[1], backward_kind(p0),
                                        backward_kind(p1));
        plans_->fwd2_os[i] = plans_->make2(2 * n_[0], 2 * n_[1],
                                           forward_kind(p0), forward_kind(p1));
        plans_->bwd2_os[i] = plans_->make2(2 * n_[0], 2 * n_[1],
                                           backward_kind(p0),
                                           backward_kind(p1));
    }
    for (int i = 0; i < 8; ++i) {
        Parity p0 = tab[(i >> 2) & 1], p1 = tab[(i >> 1) & 1], p2 = tab[i & 1];
        plans_->fwd3[i] = plans_->make3(n_[0], n_[1], n_[2], forward_kind(p0),
                                        forward_kind(p1), forward_kind(p2));
        plans_->bwd3[i] = plans_->make3(n_[0], n_[1], n_[2], backward_kind(p0),
                                        backward_kind(p1), backward_kind(p2));
        plans_->bwd3_os[i] =
            plans_->make3(2 * n_[0], 2 * n_[1], 2 * n_[2], backward_kind(p0),
                          backward_kind(p1), backward_kind(p2));
    }
}

Domain::~Domain() = default;

double Domain::mode_integral(int axis, Parity p, int m) const {
    const double L = len_[axis];
    if (p == Parity::Cos) return m == 0 ? L : 0.0;
    if (m == 0) return 0.0;
    return (m % 2 == 1) ? 2.0 * L / (M_PI * m) : 0.0;
}

Parity3 Domain::velocity_parity3(int component) {
    Parity3 p{Parity::Cos, Parity::Cos, Parity::Cos};
    p[component] = Parity::Sin;
    return p;
}

Parity2 Domain::velocity_parity2(int component) {
    return component == 0 ? Parity2{Parity::Sin, Parity::Cos}
                          : Parity2{Parity::Cos, Parity::Sin};
}

Parity3 Domain::curl_parity3(int component) {
    Parity3 p{Parity::Sin, Parity::Sin, Parity::Sin};
    p[component] = Parity::Cos;
    return p;
}

double Domain::cell2(bool os) const {
    double c = (len_[0] / n_[0]) * (len_[1] / n_[1]);
    return os ? c / 4.0 : c;
}

double Domain::cell3(bool os) const {
    double c = cell2(false) * (len_[2] / n_[2]);
    return os ? c / 8.0 : c;
}

namespace {

void check_size(std::size_t got, std::size_t want, const char* what) {
    if (got != want)
        throw std::invalid_argument(std::string(what) + ": array size " +
                                    std::to_string(got) + " != expected " +
                                    std::to_string(want));
}

// Forward remap for one axis: mode m lives at FFTW output index m-1 on sine
// axes, m on cosine axes; normalization 1/N (cosine mean: 1/(2N)).
inline int fwd_index(Parity p, int m) { return p == Parity::Sin ? m - 1 : m; }

inline double fwd_norm(Parity p, int m, int n) {
    if (p == Parity::Cos && m == 0) return 0.5 / n;
    return 1.0 / n;
}

// Backward prep factor: DST-III/DCT-III halve every stored harmonic except
// the cosine mean mode.
inline double bwd_scale(Parity p, int m) {
    return (p == Parity::Cos && m == 0) ? 1.0 : 0.5;
}

}  // namespace

void Domain::forward2(std::span<const double> values, Parity2 p,
                      std::span<double> coeffs) const {
    check_size(values.size(), size2(), "forward2 values");
    check_size(coeffs.size(), size2(), "forward2 coeffs");
    const int n0 = n_[0], n1 = n_[1];
    Buffer in(size2()), out(size2());
    std::memcpy(in.ptr, values.data(), size2() * sizeof(double));
    fftw_execute_r2r(plans_->fwd2[parity_index2(p)], in.ptr, out.ptr);
    for (int m0 = 0; m0 < n0; ++m0) {
        const bool z0 = (p[0] == Parity::Sin && m0 == 0);
        const int f0 = fwd_index(p[0], m0);
        const double s0 = fwd_norm(p[0], m0, n0);
        for (int m1 = 0; m1 < n1; ++m1) {
            if (z0 || (p[1] == Parity::Sin && m1 == 0)) {
                coeffs[std::size_t(m0) * n1 + m1] = 0.0;
                continue;
            }
            coeffs[std::size_t(m0) * n1 + m1] =
                out.ptr[std::size_t(f0) * n1 + fwd_index(p[1], m1)] * s0 *
                fwd_norm(p[1], m1, n1);
        }
    }
}

void Domain::forward2_os(std::span<const double> values, Parity2 p,
                         std::span<double> coeffs) const {
    check_size(values.size(), size2_os(), "forward2_os values");
    check_size(coeffs.size(), size2(), "forward2_os coeffs");
    const int n0 = n_[0], n1 = n_[1];
    Buffer in(size2_os()), out(size2_os());
    std::memcpy(in.ptr, values.data(), size2_os() * sizeof(double));
    fftw_execute_r2r(plans_->fwd2_os[parity_index2(p)], in.ptr, out.ptr);
    for (int m0 = 0; m0 < n0; ++m0) {
        const bool z0 = (p[0] == Parity::Sin && m0 == 0);
        const int f0 = fwd_index(p[0], m0);
        const double s0 = fwd_norm(p[0], m0, 2 * n0);
        for (int m1 = 0; m1 < n1; ++m1) {
            if (z0 || (p[1] == Parity::Sin && m1 == 0)) {
                coeffs[std::size_t(m0) * n1 + m1] = 0.0;
                continue;
            }
            coeffs[std::size_t(m0) * n1 + m1] =
                out.ptr[std::size_t(f0) * (2 * n1) + fwd_index(p[1], m1)] *
                s0 * fwd_norm(p[1], m1, 2 * n1);
        }
    }
}

void Domain::backward2(std::span<const double> coeffs, Parity2 p,
                       std::span<double> values) const {
    check_size(coeffs.size(), size2(), "backward2 coeffs");
    check_size(values.size(), size2(), "backward2 values");
    const int n0 = n_[0], n1 = n_[1];
    Buffer in(size2()), out(size2());
    std::memset(in.ptr, 0, size2() * sizeof(double));
    for (int m0 = 0; m0 < n0; ++m0) {
        if (p[0] == Parity::Sin && m0 == 0) continue;
        const int f0 = fwd_index(p[0], m0);
        const double s0 = bwd_scale(p[0], m0);
        for (int m1 = 0; m1 < n1; ++m1) {
            if (p[1] == Parity::Sin && m1 == 0) continue;
            in.ptr[std::size_t(f0) * n1 + fwd_index(p[1], m1)] =
                coeffs[std::size_t(m0) * n1 + m1] * s0 * bwd_scale(p[1], m1);
        }
    }
    fftw_execute_r2r(plans_->bwd2[parity_index2(p)], in.ptr, out.ptr);
    std::memcpy(values.data(), out.ptr, size2() * sizeof(double));
}

void Domain::backward2_os(std::span<const double> coeffs, Parity2 p,
                          std::span<double> values) const {
    check_size(coeffs.size(), size2(), "backward2_os coeffs");
    check_size(values.size(), size2_os(), "backward2_os values");
    const int n0 = n_[0], n1 = n_[1];
    Buffer in(size2_os()), out(size2_os());
    std::memset(in.ptr, 0, size2_os() * sizeof(double));
    for (int m0 = 0; m0 < n0; ++m0) {
        if (p[0] == Parity::Sin && m0 == 0) continue;
        const int f0 = fwd_index(p[0], m0);
        const double s0 = bwd_scale(p[0], m0);
        for (int m1 = 0; m1 < n1; ++m1) {
            if (p[1] == Parity::Sin && m1 == 0) continue;
            in.ptr[std::size_t(f0) * (2 * n1) + fwd_index(p[1], m1)] =
                coeffs[std::size_t(m0) * n1 + m1] * s0 * bwd_scale(p[1], m1);
        }
    }
    fftw_execute_r2r(plans_->bwd2_os[parity_index2(p)], in.ptr, out.ptr);
    std::memcpy(values.data(), out.ptr, size2_os() * sizeof(double));
}

void Domain::forward3(std::span<const double> values, Parity3 p,
                      std::span<double> coeffs) const {
    check_size(values.size(), size3(), "forward3 values");
    check_size(coeffs.size(), size3(), "forward3 coeffs");
    const int n0 = n_[0], n1 = n_[1], n2 = n_[2];
    Buffer in(size3()), out(size3());
    std::memcpy(in.ptr, values.data(), size3() * sizeof(double));
    fftw_execute_r2r(plans_->fwd3[parity_index3(p)], in.ptr, out.ptr);
    for (int m0 = 0; m0 < n0; ++m0) {
        const bool z0 = (p[0] == Parity::Sin && m0 == 0);
        const int f0 = fwd_index(p[0], m0);
        const double s0 = fwd_norm(p[0], m0, n0);
        for (int m1 = 0; m1 < n1; ++m1) {
            const bool z1 = z0 || (p[1] == Parity::Sin && m1 == 0);
            const int f1 = fwd_index(p[1], m1);
            const double s1 = s0 * fwd_norm(p[1], m1, n1);
            double* row = &coeffs[(std::size_t(m0) * n1 + m1) * n2];
            const double* src =
                z1 ? nullptr : &out.ptr[(std::size_t(f0) * n1 + f1) * n2];
            for (int m2 = 0; m2 < n2; ++m2) {
                if (z1 || (p[2] == Parity::Sin && m2 == 0)) {
                    row[m2] = 0.0;
                    continue;
                }
                row[m2] = src[fwd_index(p[2], m2)] * s1 *
                          fwd_norm(p[2], m2, n2);
            }
        }
    }
}

void Domain::backward3(std::span<const double> coeffs, Parity3 p,
                       std::span<double> values) const {
    check_size(coeffs.size(), size3(), "backward3 coeffs");
    check_size(values.size(), size3(), "backward3 values");
    const int n0 = n_[0], n1 = n_[1], n2 = n_[2];
    Buffer in(size3()), out(size3());
    std::memset(in.ptr, 0, size3() * sizeof(double));
    for (int m0 = 0; m0 < n0; ++m0) {
        if (p[0] == Parity::Sin && m0 == 0) continue;
        const int f0 = fwd_index(p[0], m0);
        const double s0 = bwd_scale(p[0], m0);
        for (int m1 = 0; m1 < n1; ++m1) {
            if (p[1] == Parity::Sin && m1 == 0) continue;
            const int f1 = fwd_index(p[1], m1);
            const double s1 = s0 * bwd_scale(p[1], m1);
            const double* row = &coeffs[(std::size_t(m0) * n1 + m1) * n2];
            double* dst = &in.ptr[(std::size_t(f0) * n1 + f1) * n2];
            for (int m2 = 0; m2 < n2; ++m2) {
                if (p[2] == Parity::Sin && m2 == 0) continue;
                dst[fwd_index(p[2], m2)] = row[m2] * s1 * bwd_scale(p[2], m2);
            }
        }
    }
    fftw_execute_r2r(plans_->bwd3[parity_index3(p)], in.ptr, out.ptr);
    std::memcpy(values.data(), out.ptr, size3() * sizeof(double));
}

void Domain::backward3_os(std::span<const double> coeffs, Parity3 p,
                          std::span<double> values) const {
    check_size(coeffs.size(), size3(), "backward3_os coeffs");
    check_size(values.size(), size3_os(), "backward3_os values");
    const int n0 = n_[0], n1 = n_[1], n2 = n_[2];
    Buffer in(size3_os()), out(size3_os());
    std::memset(in.ptr, 0, size3_os() * sizeof(double));
    for (int m0 = 0; m0 < n0; ++m0) {
        if (p[0] == Parity::Sin && m0 == 0) continue;
        const int f0 = fwd_index(p[0], m0);
        const double s0 = bwd_scale(p[0], m0);
        for (int m1 = 0; m1 < n1; ++m1) {
            if (p[1] == Parity::Sin && m1 == 0) continue;
            const int f1 = fwd_index(p[1], m1);
            const double s1 = s0 * bwd_scale(p[1], m1);
            const double* row = &coeffs[(std::size_t(m0) * n1 + m1) * n2];
            double* dst =
                &in.ptr[(std::size_t(f0) * (2 * n1) + f1) * (2 * n2)];
            for (int m2 = 0; m2 < n2; ++m2) {
                if (p[2] == Parity::Sin && m2 == 0) continue;
                dst[fwd_index(p[2], m2)] = row[m2] * s1 * bwd_scale(p[2], m2);
            }
        }
    }
    fftw_execute_r2r(plans_->bwd3_os[parity_index3(p)], in.ptr, out.ptr);
    std::memcpy(values.data(), out.ptr, size3_os() * sizeof(double));
}

void Domain::forward2_checked(std::span<const double> values_os, Parity2 p,
                              std::span<double> coeffs) const {
    forward2_os(values_os, p, coeffs);
    std::vector<double> back(size2_os());
    backward2_os(coeffs, p, back);
    double leak = 0.0, ref = 0.0;
    for (std::size_t i = 0; i < size2_os(); ++i) {
        const double d = back[i] - values_os[i];
        leak += d * d;
        ref += values_os[i] * values_os[i];
    }
    if (ref > 0.0 && leak > 1e-20 * ref)
        throw std::invalid_argument(
            "forward2_checked: data is not in the requested parity space "
            "(leaked energy " +
            std::to_string(std::sqrt(leak / ref)) + " relative)");
}

void dealias2(const Domain& d, std::span<double> coeffs) {
    const int n0 = d.resolution(0), n1 = d.resolution(1);
    check_size(coeffs.size(), d.size2(), "dealias2");
    const int k0 = d.dealias_limit(0), k1 = d.dealias_limit(1);
    for (int m0 = 0; m0 < n0; ++m0)
        for (int m1 = 0; m1 < n1; ++m1)
            if (m0 > k0 || m1 > k1) coeffs[std::size_t(m0) * n1 + m1] = 0.0;
}

void dealias3(const Domain& d, std::span<double> coeffs) {
    const int n0 = d.resolution(0), n1 = d.resolution(1), n2 = d.resolution(2);
    check_size(coeffs.size(), d.size3(), "dealias3");
    const int k0 = d.dealias_limit(0), k1 = d.dealias_limit(1),
              k2 = d.dealias_limit(2);
    for (int m0 = 0; m0 < n0; ++m0)
        for (int m1 = 0; m1 < n1; ++m1) {
            double* row = &coeffs[(std::size_t(m0) * n1 + m1) * n2];
            if (m0 > k0 || m1 > k1) {
                for (int m2 = 0; m2 < n2; ++m2) row[m2] = 0.0;
            } else {
                for (int m2 = k2 + 1; m2 < n2; ++m2) row[m2] = 0.0;
            }
        }
}

}  // namespace slipflow
