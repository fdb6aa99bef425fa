#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "qsteer/jacobi.hpp"
#include "qsteer/rng.hpp"
#include "qsteer/state.hpp"
#include "qsteer/steering.hpp"
#include "qsteer/tradeoff.hpp"

namespace qsteer {

/// Five-term canonical decomposition of a pure 3-qubit state:
///   (u_a x u_b x u_c) |psi> = l0|000> + l1 e^{i phi}|100> + l2|101> + l3|110> + l4|111>
/// with l_i >= 0 and phi in [0, pi].
struct CanonicalCoefficients {
    std::array<double, 5> lambda{};
    double phi = 0;
    CMat u_a{2}, u_b{2}, u_c{2};

    /// Real-class form: phi ~ 0 or phi ~ pi (all coefficients real, the
    /// l1 term possibly negative).
    bool real_class(double tol = 1e-8) const { return std::abs(std::sin(phi)) <= tol; }

    /// l1 with the sign carried by phi for real-class states.
    double lambda1_signed() const { return lambda[1] * std::cos(phi); }
};

/// The five-term state itself (before undoing the local unitaries).
inline PureState canonical_state(const CanonicalCoefficients& c) {
    std::vector<cplx> a(8, cplx{0, 0});
    a[0] = c.lambda[0];
    a[4] = c.lambda[1] * std::exp(cplx{0, c.phi});
    a[5] = c.lambda[2];
    a[6] = c.lambda[3];
    a[7] = c.lambda[4];
    double n2 = 0;
    for (const cplx& z : a) n2 += std::norm(z);
    const double inv = 1.0 / std::sqrt(n2);
    for (cplx& z : a) z *= inv;
    return PureState::from_amplitudes(3, a);
}

/// (u_a x u_b x u_c)^dagger applied to the five-term state; equals the
/// decomposed input up to global phase.
inline PureState canonical_reconstruct(const CanonicalCoefficients& c) {
    const CMat u = kron(kron(c.u_a, c.u_b), c.u_c).adjoint();
    return apply_unitary(canonical_state(c), u);
}

inline double reconstruction_fidelity(const CanonicalCoefficients& c, const PureState& psi) {
    const PureState rec = canonical_reconstruct(c);
    return std::abs(inner(psi.amplitudes(), rec.amplitudes()));
}

namespace detail {

struct AcinCandidate {
    CanonicalCoefficients coeffs;
    bool phi_valid = false;
};

// One decomposition from a fixed first row (r0, r1) of the A-side unitary.
inline AcinCandidate acin_from_row(const PureState& psi, cplx r0, cplx r1) {
    const double nrm = std::sqrt(std::norm(r0) + std::norm(r1));
    r0 /= nrm;
    r1 /= nrm;

    CMat t0(2), t1(2);
    for (int b = 0; b < 2; ++b)
        for (int cc = 0; cc < 2; ++cc) {
            t0(b, cc) = psi.amplitude(2 * b + cc);
            t1(b, cc) = psi.amplitude(4 + 2 * b + cc);
        }

    // A-rotated slices; row 1 of U_A is (-conj(r1), conj(r0)).
    CMat m(2), n1(2);
    for (int r = 0; r < 2; ++r)
        for (int cc = 0; cc < 2; ++cc) {
            m(r, cc) = r0 * t0(r, cc) + r1 * t1(r, cc);
            n1(r, cc) = -std::conj(r1) * t0(r, cc) + std::conj(r0) * t1(r, cc);
        }

    const Svd2 svd = svd_2x2(m);
    const CMat t1p = svd.u.adjoint() * n1 * svd.w;

    const cplx mu[4] = {t1p(0, 0), t1p(0, 1), t1p(1, 0), t1p(1, 1)};
    double theta[4];
    for (int i = 0; i < 4; ++i) theta[i] = std::abs(mu[i]) > 1e-15 ? std::arg(mu[i]) : 0.0;

    const double alpha = theta[3] - theta[1] - theta[2];
    const double beta1 = -alpha - theta[2];
    const double gamma1 = -alpha - theta[1];

    AcinCandidate cand;
    CanonicalCoefficients& c = cand.coeffs;
    c.lambda = {svd.s0, std::abs(mu[0]), std::abs(mu[1]), std::abs(mu[2]), std::abs(mu[3])};
    double n2 = 0;
    for (double l : c.lambda) n2 += l * l;
    for (double& l : c.lambda) l /= std::sqrt(n2);

    double phi = theta[0] + alpha;
    phi = std::remainder(phi, 2.0 * std::numbers::pi); // (-pi, pi]
    if (phi <= -std::numbers::pi + 1e-15) phi = std::numbers::pi;
    if (c.lambda[1] < 1e-12) phi = 0.0;      // no |100> term, phase unphysical
    if (phi < 0 && phi > -1e-9) phi = 0.0;   // roundoff at the boundary
    c.phi = phi;
    cand.phi_valid = phi >= 0.0 && phi <= std::numbers::pi + 1e-15;

    c.u_a = CMat(2);
    c.u_a(0, 0) = r0;
    c.u_a(0, 1) = r1;
    c.u_a(1, 0) = -std::conj(r1) * std::exp(cplx{0, alpha});
    c.u_a(1, 1) = std::conj(r0) * std::exp(cplx{0, alpha});

    CMat db = CMat::identity(2), dc = CMat::identity(2);
    db(1, 1) = std::exp(cplx{0, beta1});
    dc(1, 1) = std::exp(cplx{0, gamma1});
    c.u_b = db * svd.u.adjoint();
    CMat wt(2);
    for (int r = 0; r < 2; ++r)
        for (int cc = 0; cc < 2; ++cc) wt(r, cc) = svd.w(cc, r);
    c.u_c = dc * wt;
    return cand;
}

} // namespace detail

/// Acin five-term decomposition. The A-side rotation zeroing the top slice's
/// determinant comes from a quadratic; among its roots, candidates with
/// phi in [0, pi] are kept and the one with the larger l0 wins
/// (tie-break: smaller phi).
inline CanonicalCoefficients acin_decompose(const PureState& psi) {
    if (psi.num_qubits() != 3) throw ArgumentError("acin_decompose: expects a 3-qubit state");
    if (std::abs(psi.amplitudes().norm_sq() - 1.0) > 1e-10)
        throw ArgumentError("acin_decompose: state is not normalized");

    CMat t0(2), t1(2);
    for (int b = 0; b < 2; ++b)
        for (int c = 0; c < 2; ++c) {
            t0(b, c) = psi.amplitude(2 * b + c);
            t1(b, c) = psi.amplitude(4 + 2 * b + c);
        }
    const cplx det0 = t0(0, 0) * t0(1, 1) - t0(0, 1) * t0(1, 0);
    const cplx det1 = t1(0, 0) * t1(1, 1) - t1(0, 1) * t1(1, 0);
    const cplx mixed = t0(0, 0) * t1(1, 1) + t1(0, 0) * t0(1, 1) - t0(0, 1) * t1(1, 0) -
                       t1(0, 1) * t0(1, 0);

    // det(t0 + x t1) = det1 x^2 + mixed x + det0 = 0
    std::vector<std::pair<cplx, cplx>> rows; // (r0, r1) of the A-side first row
    if (std::abs(det1) < 1e-14) {
        if (std::abs(mixed) < 1e-14) {
            rows.emplace_back(1.0, 0.0); // identically singular; identity works
        } else {
            rows.emplace_back(1.0, -det0 / mixed);
            rows.emplace_back(0.0, 1.0); // the root at infinity
        }
    } else {
        const cplx disc = std::sqrt(mixed * mixed - 4.0 * det1 * det0);
        const cplx q = (std::real(std::conj(mixed) * disc) >= 0.0) ? -0.5 * (mixed + disc)
                                                                   : -0.5 * (mixed - disc);
        const cplx x1 = (std::abs(q) > 1e-300) ? det0 / q : cplx{0, 0};
        const cplx x2 = q / det1;
        rows.emplace_back(1.0, x1);
        rows.emplace_back(1.0, x2);
    }

    std::vector<detail::AcinCandidate> cands;
    for (const auto& [r0, r1] : rows) cands.push_back(detail::acin_from_row(psi, r0, r1));

    const detail::AcinCandidate* best = nullptr;
    for (const auto& cand : cands) {
        if (!cand.phi_valid) continue;
        if (!best || cand.coeffs.lambda[0] > best->coeffs.lambda[0] + 1e-12 ||
            (std::abs(cand.coeffs.lambda[0] - best->coeffs.lambda[0]) <= 1e-12 &&
             cand.coeffs.phi < best->coeffs.phi))
            best = &cand;
    }
    if (!best)
        throw NumericalIntegrityError("acin_decompose: no root produced phi in [0, pi]");
    return best->coeffs;
}

// ---- criteria for trade-off breakdown under partial collusion -------------

enum class CollusionScenario { Filtering, GlobalUnitary, SteeringGlobalUnitary };

inline const char* scenario_name(CollusionScenario s) {
    switch (s) {
        case CollusionScenario::Filtering: return "filtering";
        case CollusionScenario::GlobalUnitary: return "global_unitary";
        default: return "steering_global_unitary";
    }
}

struct CriterionEval {
    std::string name;
    double lhs = 0;
    double rhs = 0;
    bool holds = false;
};

struct CollusionVerdict {
    CollusionScenario scenario = CollusionScenario::Filtering;
    bool applicable = true; // false outside the real class
    std::array<bool, 3> pair_violates{}; // indexed by Pair
    bool tradeoff_broken = false;
    bool all_pairs_violate = false;
    std::vector<CriterionEval> criteria;
    bool ab_ac_attribution_ambiguous = false;
};

namespace detail {

constexpr double kStrict = 1e-12;

inline bool strictly_greater(double a, double b) { return a > b + kStrict; }
inline bool strictly_less(double a, double b) { return a < b - kStrict; }

} // namespace detail

/// Pairwise Bell-CHSH violation reachable by local filtering, decided from
/// the canonical coefficients (real class only).
inline CollusionVerdict theorem4_filtering(const CanonicalCoefficients& c) {
    using detail::strictly_greater;
    CollusionVerdict v;
    v.scenario = CollusionScenario::Filtering;
    if (!c.real_class()) {
        v.applicable = false;
        return v;
    }
    const double l0 = c.lambda[0], l2 = c.lambda[2], l3 = c.lambda[3], l4 = c.lambda[4];
    const double l1s = c.lambda1_signed();
    const bool l0_nonzero = l0 > detail::kStrict;
    const double j = l2 * l3 - l1s * l4;

    const bool ab = l0_nonzero && strictly_greater(l3, l4);
    const bool ac = l0_nonzero && strictly_greater(l2, l4);
    const bool bc = strictly_greater(j * j, (l0 * l4) * (l0 * l4));
    v.pair_violates = {ab, ac, bc};

    const bool crit1 = l0_nonzero && strictly_greater(std::min(l2, l3), l4);
    const bool crit2 = bc && strictly_greater(std::max(l2, l3), l4);
    v.tradeoff_broken = l0_nonzero && (crit1 || crit2);
    v.all_pairs_violate = ab && ac && bc;

    v.criteria = {
        {"AB: 4 l0^2 (l3^2 - l4^2) > 0", 4 * l0 * l0 * (l3 * l3 - l4 * l4), 0.0, ab},
        {"AC: 4 l0^2 (l2^2 - l4^2) > 0", 4 * l0 * l0 * (l2 * l2 - l4 * l4), 0.0, ac},
        {"BC: (l2 l3 - l1 l4)^2 - (l0 l4)^2 > 0", j * j - (l0 * l4) * (l0 * l4), 0.0, bc},
        {"criterion 1: l0 != 0 and l4 < min(l2, l3)", l4, std::min(l2, l3), crit1},
        {"criterion 2: BC holds and l4 < max(l2, l3)", l4, std::max(l2, l3), crit2},
    };
    return v;
}

namespace detail {

inline CollusionVerdict global_unitary_verdict(const CanonicalCoefficients& c,
                                               CollusionScenario scenario) {
    CollusionVerdict v;
    v.scenario = scenario;
    v.ab_ac_attribution_ambiguous = true;
    if (!c.real_class()) {
        v.applicable = false;
        return v;
    }
    const double l0 = c.lambda[0], l2 = c.lambda[2], l3 = c.lambda[3], l4 = c.lambda[4];
    const double l1s = c.lambda1_signed();
    const double j2 = (l2 * l3 - l1s * l4) * (l2 * l3 - l1s * l4);

    // q_ab = det(rho_C), q_ac = det(rho_B), s6 = det(rho_A); a pair can be
    // driven past the CHSH bound by a global unitary iff its marginal's
    // complement determinant is below 1/4.
    const double q_ab = l0 * l0 * (l2 * l2 + l4 * l4) + j2;
    const double q_ac = l0 * l0 * (l3 * l3 + l4 * l4) + j2;
    const double s6 = l0 * l0 * (l2 * l2 + l3 * l3 + l4 * l4);
    const double q_max = std::max(q_ab, q_ac);
    const double q_min = std::min(q_ab, q_ac);

    const bool ab = strictly_less(q_ab, 0.25);
    const bool ac = strictly_less(q_ac, 0.25);
    const bool bc = strictly_less(s6, 0.25);
    v.pair_violates = {ab, ac, bc};

    const bool crit1 = strictly_less(q_max, 0.25);
    const bool crit2 = strictly_less(q_min, 0.25) && bc;
    v.tradeoff_broken = crit1 || crit2;
    v.all_pairs_violate = bc && crit1;

    v.criteria = {
        {"AB: l0^2 (l2^2 + l4^2) + (l2 l3 - l1 l4)^2 < 1/4", q_ab, 0.25, ab},
        {"AC: l0^2 (l3^2 + l4^2) + (l2 l3 - l1 l4)^2 < 1/4", q_ac, 0.25, ac},
        {"BC: l0^2 (l2^2 + l3^2 + l4^2) < 1/4", s6, 0.25, bc},
        {"criterion 1: Max form < 1/4", q_max, 0.25, crit1},
        {"criterion 2: Min form < 1/4 and BC", q_min, 0.25, crit2},
    };
    return v;
}

} // namespace detail

/// Pairwise Bell-CHSH violation reachable by two-party global unitaries.
inline CollusionVerdict theorem5_global_unitary(const CanonicalCoefficients& c) {
    return detail::global_unitary_verdict(c, CollusionScenario::GlobalUnitary);
}

/// Steering trade-off breakdown under global unitaries shares the same
/// criteria.
inline CollusionVerdict theorem6_steering_global_unitary(const CanonicalCoefficients& c) {
    return detail::global_unitary_verdict(c, CollusionScenario::SteeringGlobalUnitary);
}

struct MarginalMixednessVerdict {
    std::array<double, 3> bloch_norms{};
    int non_mixed_count = 0;
    bool holds = false; // modified trade-off holds iff at most one marginal not maximally mixed
};

/// Counts single-qubit marginals that are not maximally mixed.
inline MarginalMixednessVerdict theorem3_collusion_check(const PureState& psi) {
    if (psi.num_qubits() != 3)
        throw ArgumentError("theorem3_collusion_check: expects a 3-qubit state");
    const DensityMatrix rho = density_from_pure(psi);
    MarginalMixednessVerdict v;
    for (int q = 0; q < 3; ++q) {
        const double n = bloch_vector(partial_trace(rho, {static_cast<Qubit>(q)})).norm();
        v.bloch_norms[static_cast<std::size_t>(q)] = n;
        if (n > 1e-8) ++v.non_mixed_count;
    }
    v.holds = v.non_mixed_count <= 1;
    return v;
}

/// Spectral test for CHSH violation somewhere in the global-unitary orbit:
/// (e1-e3)^2 + (e2-e4)^2 > 1/2 on the eigenvalues, descending.
inline bool absolute_chsh_spectral(const DensityMatrix& rho2) {
    if (rho2.num_qubits() != 2)
        throw ArgumentError("absolute_chsh_spectral: expects a two-qubit state");
    const auto e = jacobi_hermitian(rho2.matrix()).values;
    const double d1 = e[0] - e[2], d2 = e[1] - e[3];
    return d1 * d1 + d2 * d2 > 0.5 + 1e-12;
}

/// Best Bell-CHSH value found by searching local filters
/// K_X = diag(1, eps_X) W_X (eps in (0,1], W unitary): a coarse
/// eps-grid with random W draws, then coordinate-descent refinement.
/// Deterministic per seed; budget counts objective evaluations.
inline double filtering_oracle(const DensityMatrix& rho2, int budget, std::uint64_t seed) {
    if (rho2.num_qubits() != 2)
        throw ArgumentError("filtering_oracle: expects a two-qubit state");
    if (budget < 1) throw ArgumentError("filtering_oracle: budget must be >= 1");

    static constexpr double kEpsGrid[6] = {1.0, 0.5, 0.25, 0.1, 0.05, 0.01};
    SplitMix64 rng = SplitMix64::substream(seed, 0);

    auto filtered_bell = [&](const CMat& wa, const CMat& wb, double ea, double eb,
                             double& out) -> bool {
        CMat da = CMat::identity(2), db = CMat::identity(2);
        da(1, 1) = ea;
        db(1, 1) = eb;
        const CMat k = kron(da * wa, db * wb);
        const CMat s = k * rho2.matrix() * k.adjoint();
        const double tr = s.trace().real();
        if (tr < 1e-12) return false; // filter annihilates the state
        const DensityMatrix f = DensityMatrix::unchecked(2, (1.0 / tr) * s);
        out = bell_chsh_max(f);
        return true;
    };

    double best = bell_chsh_max(rho2);
    CMat best_wa = CMat::identity(2), best_wb = CMat::identity(2);
    double best_ea = 1.0, best_eb = 1.0;

    const int grid_budget = std::max(1, (budget * 7) / 10);
    for (int k = 0; k < grid_budget; ++k) {
        const CMat wa = haar_unitary(2, rng);
        const CMat wb = haar_unitary(2, rng);
        const double ea = kEpsGrid[k % 6];
        const double eb = kEpsGrid[(k / 6) % 6];
        double val;
        if (filtered_bell(wa, wb, ea, eb, val) && val > best) {
            best = val;
            best_wa = wa;
            best_wb = wb;
            best_ea = ea;
            best_eb = eb;
        }
    }

    auto small_unitary = [&](double step) {
        const Vec3 w{rng.next_gaussian() * step, rng.next_gaussian() * step,
                     rng.next_gaussian() * step};
        const double th = w.norm();
        CMat u = CMat::identity(2);
        if (th < 1e-300) return u;
        const Vec3 k{w.x / th, w.y / th, w.z / th};
        const double co = std::cos(th), si = std::sin(th);
        u(0, 0) = cplx{co, si * k.z};
        u(0, 1) = cplx{si * k.y, si * k.x};
        u(1, 0) = cplx{-si * k.y, si * k.x};
        u(1, 1) = cplx{co, -si * k.z};
        return u;
    };

    double step = 0.3;
    for (int k = 0; k < budget - grid_budget; ++k) {
        CMat wa = best_wa, wb = best_wb;
        double ea = best_ea, eb = best_eb;
        switch (k % 4) {
            case 0: wa = small_unitary(step) * wa; break;
            case 1: wb = small_unitary(step) * wb; break;
            case 2: ea = std::clamp(ea * std::exp(rng.next_gaussian() * step), 1e-6, 1.0); break;
            default: eb = std::clamp(eb * std::exp(rng.next_gaussian() * step), 1e-6, 1.0); break;
        }
        double val;
        if (filtered_bell(wa, wb, ea, eb, val) && val > best) {
            best = val;
            best_wa = wa;
            best_wb = wb;
            best_ea = ea;
            best_eb = eb;
            step = std::min(0.5, step * 1.1);
        } else {
            step = std::max(1e-4, step * 0.995);
        }
    }

    if (best > 2.0 * std::sqrt(2.0) + 1e-9)
        throw NumericalIntegrityError("filtering_oracle: value above the Tsirelson bound");
    return best;
}

} // namespace qsteer
