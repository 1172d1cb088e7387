// SPDX-License-Identifier: MIT
#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace capbound {

// Deterministic random source. Gaussians are produced by an explicit
// Box-Muller transform so the stream does not depend on the standard
// library's distribution internals.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // uniform in [0, 1)
    double uniform() { return std::ldexp(static_cast<double>(gen_() >> 11), -53); }

    // uniform in (0, 1]
    double uniform_pos() { return 1.0 - uniform(); }

    double normal() {
        const double u1 = uniform_pos();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

    // standard complex Gaussian, E|z|^2 = 1
    std::complex<double> cnormal() {
        const double u1 = uniform_pos();
        const double u2 = uniform();
        const double r = std::sqrt(-std::log(u1));
        const double a = 6.283185307179586476925287 * u2;
        return {r * std::cos(a), r * std::sin(a)};
    }

    std::uint64_t next_u64() { return gen_(); }

private:
    std::mt19937_64 gen_;
};

// SplitMix64 step; used to derive independent per-index seeds for
// deterministic parallel sweeps.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace capbound
