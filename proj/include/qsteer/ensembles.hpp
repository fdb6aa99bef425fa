#pragma once

#include <cstdint>
#include <string>

#include "qsteer/canonical.hpp"
#include "qsteer/rng.hpp"
#include "qsteer/state.hpp"

namespace qsteer {

enum class EnsembleKind { HaarPure, GinibreMixed, RealCanonical };

inline const char* ensemble_name(EnsembleKind k) {
    switch (k) {
        case EnsembleKind::HaarPure: return "haar-pure";
        case EnsembleKind::GinibreMixed: return "ginibre-mixed";
        default: return "real-canonical";
    }
}

struct EnsembleSpec {
    EnsembleKind kind = EnsembleKind::HaarPure;
    int num_qubits = 3;
    int rank = 8; // Ginibre only
    int count = 1;
    std::uint64_t seed = 0;

    void validate() const {
        if (num_qubits < 1 || num_qubits > 3)
            throw ArgumentError("EnsembleSpec: num_qubits must be 1..3");
        if (count < 1) throw ArgumentError("EnsembleSpec: count must be >= 1");
        if (kind == EnsembleKind::GinibreMixed && (rank < 1 || rank > (1 << num_qubits)))
            throw ArgumentError("EnsembleSpec: rank must be 1..2^num_qubits");
        if (kind == EnsembleKind::RealCanonical && num_qubits != 3)
            throw ArgumentError("EnsembleSpec: real-canonical states are 3-qubit");
    }
};

/// Sample k of a Haar-pure run; stateless in (spec, k), safe to call from
/// any thread in any order.
inline PureState sample_haar_pure(const EnsembleSpec& spec, std::uint64_t index) {
    SplitMix64 rng = SplitMix64::substream(spec.seed, index);
    const int dim = 1 << spec.num_qubits;
    while (true) {
        std::vector<cplx> a(static_cast<std::size_t>(dim));
        double n2 = 0;
        for (auto& z : a) {
            z = rng.next_complex_gaussian();
            n2 += std::norm(z);
        }
        if (n2 < 1e-24) continue;
        const double inv = 1.0 / std::sqrt(n2);
        for (auto& z : a) z *= inv;
        return PureState::from_amplitudes(spec.num_qubits, a);
    }
}

/// rho = G G^dagger / tr with G complex Gaussian of shape 2^n x rank.
inline DensityMatrix sample_ginibre_mixed(const EnsembleSpec& spec, std::uint64_t index) {
    SplitMix64 rng = SplitMix64::substream(spec.seed, index);
    const int dim = 1 << spec.num_qubits;
    while (true) {
        // dim x rank Ginibre, rho = G G^dagger
        std::vector<cplx> g(static_cast<std::size_t>(dim * spec.rank));
        for (auto& z : g) z = rng.next_complex_gaussian();
        CMat rho(dim);
        for (int r = 0; r < dim; ++r)
            for (int c = 0; c < dim; ++c) {
                cplx s{0, 0};
                for (int k = 0; k < spec.rank; ++k)
                    s += g[static_cast<std::size_t>(r * spec.rank + k)] *
                         std::conj(g[static_cast<std::size_t>(c * spec.rank + k)]);
                rho(r, c) = s;
            }
        const double tr = rho.trace().real();
        if (tr < 1e-24) continue; // essentially-zero draw, take the next
        rho = (1.0 / tr) * rho;
        // symmetrize away the last bits of roundoff
        for (int r = 0; r < dim; ++r) {
            rho(r, r) = rho(r, r).real();
            for (int c = r + 1; c < dim; ++c) {
                const cplx avg = 0.5 * (rho(r, c) + std::conj(rho(c, r)));
                rho(r, c) = avg;
                rho(c, r) = std::conj(avg);
            }
        }
        return DensityMatrix::unchecked(spec.num_qubits, rho);
    }
}

/// Five-term states with lambda uniform on the positive orthant of the
/// 4-sphere (absolute values of a normalized Gaussian 5-vector), phi = 0.
inline CanonicalCoefficients sample_real_canonical_coeffs(const EnsembleSpec& spec,
                                                          std::uint64_t index) {
    SplitMix64 rng = SplitMix64::substream(spec.seed, index);
    while (true) {
        CanonicalCoefficients c;
        double n2 = 0;
        for (double& l : c.lambda) {
            l = std::abs(rng.next_gaussian());
            n2 += l * l;
        }
        if (n2 < 1e-24) continue;
        const double inv = 1.0 / std::sqrt(n2);
        for (double& l : c.lambda) l *= inv;
        c.phi = 0.0;
        c.u_a = CMat::identity(2);
        c.u_b = CMat::identity(2);
        c.u_c = CMat::identity(2);
        return c;
    }
}

inline PureState sample_real_canonical(const EnsembleSpec& spec, std::uint64_t index) {
    return canonical_state(sample_real_canonical_coeffs(spec, index));
}

} // namespace qsteer
