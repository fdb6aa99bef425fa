#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "qsteer/jacobi.hpp"
#include "qsteer/matrix.hpp"

namespace qsteer {

/// Qubit labels; A is the most significant bit of the basis index
/// (|abc> has index 4a + 2b + c).
enum class Qubit : int { A = 0, B = 1, C = 2 };

inline const char* qubit_name(Qubit q) {
    switch (q) {
        case Qubit::A: return "A";
        case Qubit::B: return "B";
        default: return "C";
    }
}

inline CMat pauli_x() {
    CMat m(2);
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    return m;
}

inline CMat pauli_y() {
    CMat m(2);
    m(0, 1) = cplx{0, -1};
    m(1, 0) = cplx{0, 1};
    return m;
}

inline CMat pauli_z() {
    CMat m(2);
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    return m;
}

inline CMat pauli(int i) {
    switch (i) {
        case 0: return pauli_x();
        case 1: return pauli_y();
        default: return pauli_z();
    }
}

/// Normalized pure state on 1..3 qubits.
class PureState {
  public:
    static PureState from_amplitudes(int num_qubits, const std::vector<cplx>& amps) {
        PureState s = unchecked(num_qubits, amps);
        const double n2 = s.amplitudes().norm_sq();
        if (std::abs(n2 - 1.0) > 1e-12)
            throw ArgumentError("PureState: amplitudes are not normalized");
        return s;
    }

    /// Skips the normalization check; for internal use and tests of error paths.
    static PureState unchecked(int num_qubits, const std::vector<cplx>& amps) {
        if (num_qubits < 1 || num_qubits > 3)
            throw ArgumentError("PureState: num_qubits must be 1..3");
        const int dim = 1 << num_qubits;
        if (static_cast<int>(amps.size()) != dim)
            throw ArgumentError("PureState: amplitude count does not match 2^num_qubits");
        PureState s(num_qubits);
        for (int i = 0; i < dim; ++i) {
            if (!is_finite(amps[static_cast<std::size_t>(i)]))
                throw ArgumentError("PureState: non-finite amplitude");
            s.a_[i] = amps[static_cast<std::size_t>(i)];
        }
        return s;
    }

    static PureState basis(int num_qubits, int index) {
        std::vector<cplx> a(static_cast<std::size_t>(1 << num_qubits), cplx{0, 0});
        a[static_cast<std::size_t>(index)] = 1.0;
        return from_amplitudes(num_qubits, a);
    }

    static PureState ghz() {
        std::vector<cplx> a(8, cplx{0, 0});
        a[0] = a[7] = 1.0 / std::sqrt(2.0);
        return from_amplitudes(3, a);
    }

    static PureState w_state() {
        std::vector<cplx> a(8, cplx{0, 0});
        a[1] = a[2] = a[4] = 1.0 / std::sqrt(3.0);
        return from_amplitudes(3, a);
    }

    static PureState bell() {
        std::vector<cplx> a(4, cplx{0, 0});
        a[0] = a[3] = 1.0 / std::sqrt(2.0);
        return from_amplitudes(2, a);
    }

    int num_qubits() const { return nq_; }
    int dim() const { return a_.dim(); }
    const CVec& amplitudes() const { return a_; }
    cplx amplitude(int i) const { return a_[i]; }

  private:
    explicit PureState(int nq) : nq_(nq), a_(1 << nq) {}

    int nq_;
    CVec a_;
};

/// Hermitian, unit-trace, positive-semidefinite matrix on 1..3 qubits.
class DensityMatrix {
  public:
    static DensityMatrix from_matrix(int num_qubits, const CMat& m) {
        DensityMatrix rho = unchecked(num_qubits, m);
        if (!m.all_finite()) throw ArgumentError("DensityMatrix: non-finite entries");
        if (m.hermiticity_defect() > 1e-12)
            throw NumericalIntegrityError("DensityMatrix: not Hermitian within 1e-12");
        if (std::abs(m.trace().real() - 1.0) > 1e-12 || std::abs(m.trace().imag()) > 1e-12)
            throw NumericalIntegrityError("DensityMatrix: trace differs from 1");
        const auto ev = jacobi_hermitian(m).values;
        if (ev[static_cast<std::size_t>(m.dim() - 1)] < -1e-10)
            throw NumericalIntegrityError("DensityMatrix: negative eigenvalue beyond tolerance");
        return rho;
    }

    /// Skips invariant checks; for internal use and tests of error paths.
    static DensityMatrix unchecked(int num_qubits, const CMat& m) {
        if (num_qubits < 1 || num_qubits > 3)
            throw ArgumentError("DensityMatrix: num_qubits must be 1..3");
        if (m.dim() != (1 << num_qubits))
            throw ArgumentError("DensityMatrix: dimension does not match 2^num_qubits");
        return DensityMatrix(num_qubits, m);
    }

    static DensityMatrix maximally_mixed(int num_qubits) {
        const int dim = 1 << num_qubits;
        CMat m(dim);
        for (int i = 0; i < dim; ++i) m(i, i) = 1.0 / dim;
        return DensityMatrix(num_qubits, m);
    }

    int num_qubits() const { return nq_; }
    int dim() const { return m_.dim(); }
    const CMat& matrix() const { return m_; }
    cplx entry(int r, int c) const { return m_(r, c); }

    double purity() const {
        double s = 0;
        for (int r = 0; r < dim(); ++r)
            for (int c = 0; c < dim(); ++c) s += std::norm(m_(r, c));
        return s;
    }

  private:
    DensityMatrix(int nq, const CMat& m) : nq_(nq), m_(m) {}

    int nq_;
    CMat m_;
};

/// Single-qubit Pauli expectations of a marginal.
struct BlochVector {
    double x = 0, y = 0, z = 0;
    double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

/// Two-qubit Pauli correlation matrix t_ij = <sigma_i x sigma_j>.
class CorrelationMatrix {
  public:
    explicit CorrelationMatrix(const Mat3& t) : t_(t) {}

    const Mat3& t() const { return t_; }
    double operator()(int i, int j) const { return t_(i, j); }

    /// Singular values (t1, t2, t3), descending; computed on first use.
    const std::array<double, 3>& singular_values() const {
        if (!sv_) sv_ = singular_values_3x3(t_);
        return *sv_;
    }

    double frobenius_sq() const { return t_.frobenius_sq(); }

  private:
    Mat3 t_;
    mutable std::optional<std::array<double, 3>> sv_;
};

inline DensityMatrix density_from_pure(const PureState& psi) {
    if (std::abs(psi.amplitudes().norm_sq() - 1.0) > 1e-10)
        throw ArgumentError("density_from_pure: state is not normalized");
    return DensityMatrix::unchecked(psi.num_qubits(), outer(psi.amplitudes(), psi.amplitudes()));
}

/// Reduced state on `keep` (a nonempty strict subset of the qubits present),
/// kept qubits stay in A-before-B-before-C order.
inline DensityMatrix partial_trace(const DensityMatrix& rho, std::vector<Qubit> keep) {
    const int n = rho.num_qubits();
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    if (keep.empty()) throw ArgumentError("partial_trace: keep set is empty");
    if (static_cast<int>(keep.size()) >= n)
        throw ArgumentError("partial_trace: keep set must be a strict subset");
    for (Qubit q : keep)
        if (static_cast<int>(q) < 0 || static_cast<int>(q) >= n)
            throw ArgumentError("partial_trace: qubit label outside this state");

    std::vector<int> keep_pos, traced_pos;
    for (int pos = 0; pos < n; ++pos) {
        const bool kept = std::find(keep.begin(), keep.end(), static_cast<Qubit>(pos)) != keep.end();
        (kept ? keep_pos : traced_pos).push_back(pos);
    }

    const int nk = static_cast<int>(keep_pos.size());
    const int nt = static_cast<int>(traced_pos.size());
    const int dk = 1 << nk, dt = 1 << nt;

    // Composes a full index from kept bits and traced bits at their positions.
    auto full_index = [&](int kbits, int tbits) {
        int idx = 0;
        for (int j = 0; j < nk; ++j)
            idx |= ((kbits >> (nk - 1 - j)) & 1) << (n - 1 - keep_pos[static_cast<std::size_t>(j)]);
        for (int j = 0; j < nt; ++j)
            idx |= ((tbits >> (nt - 1 - j)) & 1) << (n - 1 - traced_pos[static_cast<std::size_t>(j)]);
        return idx;
    };

    CMat out(dk);
    for (int i = 0; i < dk; ++i)
        for (int j = 0; j < dk; ++j) {
            cplx s{0, 0};
            for (int t = 0; t < dt; ++t) s += rho.entry(full_index(i, t), full_index(j, t));
            out(i, j) = s;
        }
    return DensityMatrix::unchecked(nk, out);
}

inline BlochVector bloch_vector(const DensityMatrix& rho1) {
    if (rho1.num_qubits() != 1) throw ArgumentError("bloch_vector: expects a single-qubit state");
    const CMat& m = rho1.matrix();
    BlochVector b;
    b.x = (m(0, 1) + m(1, 0)).real();
    b.y = (cplx{0, 1} * (m(0, 1) - m(1, 0))).real();
    b.z = (m(0, 0) - m(1, 1)).real();
    return b;
}

inline CorrelationMatrix correlation_matrix(const DensityMatrix& rho2) {
    if (rho2.num_qubits() != 2)
        throw ArgumentError("correlation_matrix: expects a two-qubit state");
    Mat3 t;
    for (int i = 0; i < 3; ++i) {
        const CMat si = pauli(i);
        for (int j = 0; j < 3; ++j) {
            const CMat op = kron(si, pauli(j));
            cplx tr{0, 0};
            for (int r = 0; r < 4; ++r)
                for (int c = 0; c < 4; ++c) tr += rho2.entry(r, c) * op(c, r);
            if (std::abs(tr.imag()) > 1e-9)
                throw NumericalIntegrityError("correlation_matrix: imaginary residue in t_ij");
            t(i, j) = tr.real();
        }
    }
    return CorrelationMatrix(t);
}

/// |psi'> = U |psi> for a full-dimension unitary U.
inline PureState apply_unitary(const PureState& psi, const CMat& u) {
    if (u.dim() != psi.dim()) throw ArgumentError("apply_unitary: dimension mismatch");
    const CVec out = u * psi.amplitudes();
    std::vector<cplx> amps(static_cast<std::size_t>(out.dim()));
    for (int i = 0; i < out.dim(); ++i) amps[static_cast<std::size_t>(i)] = out[i];
    return PureState::from_amplitudes(psi.num_qubits(), amps);
}

/// rho' = U rho U^dagger.
inline DensityMatrix apply_unitary(const DensityMatrix& rho, const CMat& u) {
    if (u.dim() != rho.dim()) throw ArgumentError("apply_unitary: dimension mismatch");
    return DensityMatrix::unchecked(rho.num_qubits(), u * rho.matrix() * u.adjoint());
}

} // namespace qsteer
