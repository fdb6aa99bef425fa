#pragma once

#include <cmath>

#include "qsteer/jacobi.hpp"
#include "qsteer/state.hpp"

namespace qsteer {

namespace detail {

inline CMat hermitian_sqrt(const CMat& m) {
    const EigenSystem es = jacobi_hermitian(m);
    const int n = m.dim();
    CMat d(n);
    for (int i = 0; i < n; ++i)
        d(i, i) = std::sqrt(std::max(0.0, es.values[static_cast<std::size_t>(i)]));
    return es.vectors * d * es.vectors.adjoint();
}

inline CMat spin_flip(const CMat& rho) {
    const CMat yy = kron(pauli_y(), pauli_y());
    return yy * rho.conj() * yy;
}

} // namespace detail

/// Wootters concurrence. The spectrum of rho * rho_tilde is obtained from the
/// Hermitian matrix sqrt(rho) rho_tilde sqrt(rho), which shares it.
inline double concurrence(const DensityMatrix& rho2) {
    if (rho2.num_qubits() != 2) throw ArgumentError("concurrence: expects a two-qubit state");
    const CMat root = detail::hermitian_sqrt(rho2.matrix());
    const CMat h = root * detail::spin_flip(rho2.matrix()) * root;
    const auto ev = jacobi_hermitian(h).values;
    double lams[4];
    for (int i = 0; i < 4; ++i) {
        const double e = ev[static_cast<std::size_t>(i)];
        if (e < -1e-9)
            throw NumericalIntegrityError("concurrence: spectrum of rho*rho_tilde is negative");
        lams[i] = std::sqrt(std::max(0.0, e));
    }
    return std::max(0.0, lams[0] - lams[1] - lams[2] - lams[3]);
}

/// C^2 between one qubit and the other two of a pure state: 4 det(rho_focus).
inline double bipartition_concurrence_sq(const PureState& psi, Qubit focus) {
    if (psi.num_qubits() != 3)
        throw ArgumentError("bipartition_concurrence_sq: expects a 3-qubit pure state");
    const DensityMatrix rf = partial_trace(density_from_pure(psi), {focus});
    const cplx det = rf.entry(0, 0) * rf.entry(1, 1) - rf.entry(0, 1) * rf.entry(1, 0);
    return 4.0 * det.real();
}

struct TangleReport {
    double tangle = 0;
    double c_sq_focus_rest = 0;
    double c_sq_pair1 = 0; // focus paired with the lower remaining label
    double c_sq_pair2 = 0; // focus paired with the higher remaining label
    Qubit focus = Qubit::A;
};

/// Residual three-way entanglement tau = C^2_{focus:rest} - C^2_p1 - C^2_p2.
/// Roundoff negatives within 1e-9 are clamped to zero.
inline TangleReport tangle(const PureState& psi, Qubit focus = Qubit::A) {
    if (psi.num_qubits() != 3) throw ArgumentError("tangle: expects a 3-qubit pure state");
    const DensityMatrix rho = density_from_pure(psi);

    Qubit others[2];
    int k = 0;
    for (int q = 0; q < 3; ++q)
        if (static_cast<Qubit>(q) != focus) others[k++] = static_cast<Qubit>(q);

    TangleReport r;
    r.focus = focus;
    r.c_sq_focus_rest = bipartition_concurrence_sq(psi, focus);
    const double c1 = concurrence(partial_trace(rho, {focus, others[0]}));
    const double c2 = concurrence(partial_trace(rho, {focus, others[1]}));
    r.c_sq_pair1 = c1 * c1;
    r.c_sq_pair2 = c2 * c2;
    const double raw = r.c_sq_focus_rest - r.c_sq_pair1 - r.c_sq_pair2;
    if (raw < -1e-9)
        throw NumericalIntegrityError("tangle: negative beyond roundoff tolerance");
    r.tangle = std::max(0.0, raw);
    return r;
}

/// Density-matrix entry point; only rank-1 (pure) inputs are supported.
inline TangleReport tangle(const DensityMatrix& rho, Qubit focus = Qubit::A) {
    if (rho.num_qubits() != 3) throw ArgumentError("tangle: expects a 3-qubit state");
    if (rho.purity() < 1.0 - 1e-8)
        throw UnsupportedInputError("tangle: mixed states are not supported (convex roof)");
    const EigenSystem es = jacobi_hermitian(rho.matrix());
    std::vector<cplx> amps(8);
    double n2 = 0;
    for (int i = 0; i < 8; ++i) {
        amps[static_cast<std::size_t>(i)] = es.vectors(i, 0);
        n2 += std::norm(es.vectors(i, 0));
    }
    const double inv = 1.0 / std::sqrt(n2);
    for (cplx& a : amps) a *= inv;
    return tangle(PureState::from_amplitudes(3, amps), focus);
}

} // namespace qsteer
