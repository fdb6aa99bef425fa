#pragma once

#include <algorithm>
#include <array>
#include <cmath>

#include "qsteer/matrix.hpp"

namespace qsteer {

/// Eigenvalues (descending) with matching eigenvector columns.
struct EigenSystem {
    int n = 0;
    std::array<double, 8> values{};
    CMat vectors; // column i is the eigenvector of values[i]

    EigenSystem() : vectors(1) {}
    explicit EigenSystem(int dim) : n(dim), vectors(dim) {}
};

namespace detail {

inline double offdiag_frobenius(const CMat& m) {
    double s = 0;
    for (int r = 0; r < m.dim(); ++r)
        for (int c = 0; c < m.dim(); ++c)
            if (r != c) s += std::norm(m(r, c));
    return std::sqrt(s);
}

} // namespace detail

/// Cyclic complex Jacobi on a Hermitian matrix. Hermiticity is the caller's
/// responsibility; use hermitian_eigenvalues() for the checked entry point.
inline EigenSystem jacobi_hermitian(const CMat& input) {
    const int n = input.dim();
    CMat a = input;
    CMat v = CMat::identity(n);

    constexpr int kMaxSweeps = 100;
    constexpr double kTol = 1e-13;

    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        if (detail::offdiag_frobenius(a) < kTol) break;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cplx g = a(p, q);
                const double absg = std::abs(g);
                if (absg < 1e-300) continue;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                // Phase-rotate the pivot to a real 2x2 problem, then a Givens step.
                const cplx phase = g / absg;
                const double theta = (aqq - app) / (2.0 * absg);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                // Column rotation J: col p <- c*p - conj(sp)*q, col q <- sp*p + c*q
                const cplx sp = s * phase;
                for (int r = 0; r < n; ++r) {
                    const cplx arp = a(r, p), arq = a(r, q);
                    a(r, p) = c * arp - std::conj(sp) * arq;
                    a(r, q) = sp * arp + c * arq;
                }
                for (int col = 0; col < n; ++col) {
                    const cplx apc = a(p, col), aqc = a(q, col);
                    a(p, col) = c * apc - sp * aqc;
                    a(q, col) = std::conj(sp) * apc + c * aqc;
                }
                for (int r = 0; r < n; ++r) {
                    const cplx vrp = v(r, p), vrq = v(r, q);
                    v(r, p) = c * vrp - std::conj(sp) * vrq;
                    v(r, q) = sp * vrp + c * vrq;
                }
            }
        }
    }

    EigenSystem es(n);
    std::array<int, 8> order{};
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    std::sort(order.begin(), order.begin() + n,
              [&](int i, int j) { return a(i, i).real() > a(j, j).real(); });
    for (int i = 0; i < n; ++i) {
        const int src = order[static_cast<std::size_t>(i)];
        es.values[static_cast<std::size_t>(i)] = a(src, src).real();
        for (int r = 0; r < n; ++r) es.vectors(r, i) = v(r, src);
    }
    return es;
}

/// Eigenvalues of a Hermitian matrix (dim <= 8), sorted descending.
/// Rejects inputs whose Hermiticity defect exceeds 1e-10.
inline std::array<double, 8> hermitian_eigenvalues(const CMat& m) {
    if (!m.all_finite()) throw NumericalIntegrityError("hermitian_eigenvalues: non-finite entries");
    if (m.hermiticity_defect() > 1e-10)
        throw NumericalIntegrityError("hermitian_eigenvalues: input is not Hermitian");
    return jacobi_hermitian(m).values;
}

/// Singular values of a 3x3 real matrix, descending, via Jacobi on T^T T.
/// Roundoff negatives are clamped to zero.
inline std::array<double, 3> singular_values_3x3(const Mat3& t) {
    CMat g(3);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            double s = 0;
            for (int k = 0; k < 3; ++k) s += t(k, r) * t(k, c);
            g(r, c) = s;
        }
    const auto ev = jacobi_hermitian(g).values;
    std::array<double, 3> out{};
    for (int i = 0; i < 3; ++i)
        out[static_cast<std::size_t>(i)] =
            std::sqrt(std::max(0.0, ev[static_cast<std::size_t>(i)]));
    return out;
}

/// 2x2 complex SVD, m = u * diag(s0, s1) * w^dagger with s0 >= s1 >= 0.
struct Svd2 {
    CMat u{2}, w{2};
    double s0 = 0, s1 = 0;
};

inline Svd2 svd_2x2(const CMat& m) {
    // Eigendecompose m^dagger m for w, then recover u columns.
    const EigenSystem es = jacobi_hermitian(m.adjoint() * m);
    Svd2 r;
    r.s0 = std::sqrt(std::max(0.0, es.values[0]));
    r.s1 = std::sqrt(std::max(0.0, es.values[1]));
    r.w = es.vectors;
    CVec w0(2), w1(2);
    w0[0] = r.w(0, 0); w0[1] = r.w(1, 0);
    w1[0] = r.w(0, 1); w1[1] = r.w(1, 1);
    const CVec mw0 = m * w0;
    if (r.s0 > 1e-150) {
        r.u(0, 0) = mw0[0] / r.s0;
        r.u(1, 0) = mw0[1] / r.s0;
    } else {
        r.u(0, 0) = 1.0;
        r.u(1, 0) = 0.0;
    }
    if (r.s1 > 1e-12 * std::max(1.0, r.s0)) {
        const CVec mw1 = m * w1;
        r.u(0, 1) = mw1[0] / r.s1;
        r.u(1, 1) = mw1[1] / r.s1;
    } else {
        // Orthonormal completion.
        r.u(0, 1) = -std::conj(r.u(1, 0));
        r.u(1, 1) = std::conj(r.u(0, 0));
    }
    return r;
}

} // namespace qsteer
