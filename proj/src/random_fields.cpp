/// @file random_fields.cpp

#include "slipflow/random_fields.hpp"

#include <cmath>

#include "slipflow/ns3d.hpp"

namespace slipflow {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

}  // namespace

Rng::Rng(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& s : s_) s = splitmix64(x);
}

std::uint64_t Rng::next_u64() {
    // xoshiro256++
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Rng::symmetric() {
    return 2.0 * ((next_u64() >> 11) * 0x1.0p-53) - 1.0;
}

namespace {

ScalarField2 fill_scalar2(const Domain& d, Parity2 p, Rng& rng, int max_mode,
                          double smooth) {
    ScalarField2 f(d, p);
    const int n1 = d.resolution(0), n2 = d.resolution(1);
    for (int m1 = 0; m1 < n1; ++m1) {
        if (p[0] == Parity::Sin && m1 == 0) continue;
        for (int m2 = 0; m2 < n2; ++m2) {
            if (p[1] == Parity::Sin && m2 == 0) continue;
            const double u = rng.symmetric();
            if (max_mode >= 0 && (m1 > max_mode || m2 > max_mode)) continue;
            const double k1 = d.wavenumber(0, m1), k2 = d.wavenumber(1, m2);
            f.at(m1, m2) =
                u * std::pow(1.0 + k1 * k1 + k2 * k2, -smooth);
        }
    }
    return f;
}

ScalarField3 fill_scalar3(const Domain& d, Parity3 p, Rng& rng, int max_mode,
                          double smooth) {
    ScalarField3 f(d, p);
    const int n1 = d.resolution(0), n2 = d.resolution(1), n3 = d.resolution(2);
    for (int m1 = 0; m1 < n1; ++m1) {
        if (p[0] == Parity::Sin && m1 == 0) continue;
        for (int m2 = 0; m2 < n2; ++m2) {
            if (p[1] == Parity::Sin && m2 == 0) continue;
            for (int m3 = 0; m3 < n3; ++m3) {
                if (p[2] == Parity::Sin && m3 == 0) continue;
                const double u = rng.symmetric();
                if (max_mode >= 0 &&
                    (m1 > max_mode || m2 > max_mode || m3 > max_mode))
                    continue;
                const double k1 = d.wavenumber(0, m1),
                             k2 = d.wavenumber(1, m2),
                             k3 = d.wavenumber(2, m3);
                f.at(m1, m2, m3) =
                    u * std::pow(1.0 + k1 * k1 + k2 * k2 + k3 * k3, -smooth);
            }
        }
    }
    return f;
}

}  // namespace

ScalarField2 random_scalar2(const Domain& d, Parity2 p, std::uint64_t seed,
                            int max_mode, double smooth) {
    Rng rng(seed);
    return fill_scalar2(d, p, rng, max_mode, smooth);
}

ScalarField3 random_scalar3(const Domain& d, Parity3 p, std::uint64_t seed,
                            int max_mode, double smooth) {
    Rng rng(seed);
    return fill_scalar3(d, p, rng, max_mode, smooth);
}

Velocity2D random_stream(const Domain& d, std::uint64_t seed, int max_mode,
                         double smooth) {
    Velocity2D w(d);
    w.psi = random_scalar2(d, Domain::stream_parity, seed, max_mode, smooth);
    return w;
}

Velocity3D random_divfree3(const Domain& d, std::uint64_t seed, int max_mode,
                           double smooth) {
    Velocity3D v(d);
    Rng rng(seed);
    for (int i = 0; i < 3; ++i)
        v.u[i] = fill_scalar3(d, Domain::velocity_parity3(i), rng, max_mode,
                              smooth);
    leray_project(v.u);
    return v;
}

}  // namespace slipflow
