#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>

#include "qsteer/matrix.hpp"

namespace qsteer {

/// SplitMix64 stream. Substreams are derived from (seed, stream index) by
/// counter mixing, so sample k of a run is independent of evaluation order
/// and thread count.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : s_(seed) {}

    /// Independent substream for (seed, index).
    static SplitMix64 substream(std::uint64_t seed, std::uint64_t index) {
        return SplitMix64(mix(mix(seed) ^ mix(index + 0x9E3779B97F4A7C15ULL)));
    }

    std::uint64_t next_u64() {
        s_ += 0x9E3779B97F4A7C15ULL;
        return mix(s_);
    }

    /// Uniform in [0, 1), 53-bit resolution.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller.
    double next_gaussian() {
        if (spare_) {
            const double v = *spare_;
            spare_.reset();
            return v;
        }
        const double u1 = 1.0 - next_double(); // (0, 1]
        const double u2 = next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        return r * std::cos(a);
    }

    cplx next_complex_gaussian() {
        return {next_gaussian(), next_gaussian()};
    }

  private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t s_;
    std::optional<double> spare_;
};

inline Vec3 random_unit_vec3(SplitMix64& rng) {
    while (true) {
        Vec3 v{rng.next_gaussian(), rng.next_gaussian(), rng.next_gaussian()};
        const double n = v.norm();
        if (n > 1e-12) return {v.x / n, v.y / n, v.z / n};
    }
}

/// Random rotation with columns forming an orthonormal frame
/// (Gram-Schmidt of Gaussian vectors).
inline Mat3 random_frame(SplitMix64& rng) {
    while (true) {
        Vec3 c0 = random_unit_vec3(rng);
        Vec3 g{rng.next_gaussian(), rng.next_gaussian(), rng.next_gaussian()};
        const double d = dot(g, c0);
        Vec3 c1{g.x - d * c0.x, g.y - d * c0.y, g.z - d * c0.z};
        const double n1 = c1.norm();
        if (n1 < 1e-9) continue;
        c1 = {c1.x / n1, c1.y / n1, c1.z / n1};
        const Vec3 c2{c0.y * c1.z - c0.z * c1.y, c0.z * c1.x - c0.x * c1.z,
                      c0.x * c1.y - c0.y * c1.x};
        Mat3 m;
        for (int r = 0; r < 3; ++r) {
            m(r, 0) = c0[r];
            m(r, 1) = c1[r];
            m(r, 2) = c2[r];
        }
        return m;
    }
}

/// Haar-distributed unitary of dimension dim: complex Ginibre followed by
/// modified Gram-Schmidt (positive R diagonal makes Q Haar).
inline CMat haar_unitary(int dim, SplitMix64& rng) {
    while (true) {
        CMat g(dim);
        for (int r = 0; r < dim; ++r)
            for (int c = 0; c < dim; ++c) g(r, c) = rng.next_complex_gaussian();

        CMat q(dim);
        bool degenerate = false;
        for (int c = 0; c < dim && !degenerate; ++c) {
            CVec v(dim);
            for (int r = 0; r < dim; ++r) v[r] = g(r, c);
            for (int prev = 0; prev < c; ++prev) {
                cplx proj{0, 0};
                for (int r = 0; r < dim; ++r) proj += std::conj(q(r, prev)) * v[r];
                for (int r = 0; r < dim; ++r) v[r] -= proj * q(r, prev);
            }
            const double n = v.norm();
            if (n < 1e-9) {
                degenerate = true;
                break;
            }
            for (int r = 0; r < dim; ++r) q(r, c) = v[r] / n;
        }
        if (!degenerate) return q;
    }
}

} // namespace qsteer
