#pragma once

#include <array>
#include <optional>

#include "qsteer/entanglement.hpp"
#include "qsteer/steering.hpp"

namespace qsteer {

enum class Pair : int { AB = 0, AC = 1, BC = 2 };

inline const char* pair_name(Pair p) {
    switch (p) {
        case Pair::AB: return "AB";
        case Pair::AC: return "AC";
        default: return "BC";
    }
}

inline std::array<Qubit, 2> pair_qubits(Pair p) {
    switch (p) {
        case Pair::AB: return {Qubit::A, Qubit::B};
        case Pair::AC: return {Qubit::A, Qubit::C};
        default: return {Qubit::B, Qubit::C};
    }
}

/// Per-pair steering/Bell maxima of a 3-qubit state, with the sums that the
/// trade-off relations bound.
struct TradeoffReport {
    std::array<double, 3> f2_sq{};       // indexed by Pair
    std::array<double, 3> f3_sq{};
    std::array<double, 3> bell_max_sq{};
    double sum_f2_sq = 0;
    double sum_f3_sq = 0;
    double sum_bell_sq = 0;
    bool purity_flag = false;
    std::optional<double> tangle;               // pure input only
    std::optional<double> complementarity_lhs;  // 2*tangle + max-pair f3_sq

    double max_pair_f3_sq() const {
        return std::max(f3_sq[0], std::max(f3_sq[1], f3_sq[2]));
    }
};

namespace detail {

inline TradeoffReport pair_metrics(const DensityMatrix& rho3) {
    TradeoffReport r;
    for (int p = 0; p < 3; ++p) {
        const auto q = pair_qubits(static_cast<Pair>(p));
        const DensityMatrix red = partial_trace(rho3, {q[0], q[1]});
        const ViolationReport v = violation_report(red);
        r.f2_sq[static_cast<std::size_t>(p)] = v.f2_sq;
        r.f3_sq[static_cast<std::size_t>(p)] = v.f3_sq;
        r.bell_max_sq[static_cast<std::size_t>(p)] = v.bell_max * v.bell_max;
        r.sum_f2_sq += v.f2_sq;
        r.sum_f3_sq += v.f3_sq;
        r.sum_bell_sq += v.bell_max * v.bell_max;
    }
    return r;
}

} // namespace detail

inline TradeoffReport tradeoff_report(const DensityMatrix& rho3) {
    if (rho3.num_qubits() != 3) throw ArgumentError("tradeoff_report: expects a 3-qubit state");
    return detail::pair_metrics(rho3);
}

inline TradeoffReport tradeoff_report(const PureState& psi) {
    if (psi.num_qubits() != 3) throw ArgumentError("tradeoff_report: expects a 3-qubit state");
    TradeoffReport r = detail::pair_metrics(density_from_pure(psi));
    r.purity_flag = true;
    r.tangle = tangle(psi).tangle;
    r.complementarity_lhs = 2.0 * *r.tangle + r.max_pair_f3_sq();
    return r;
}

struct CheckResult {
    bool pass = false;
    double margin = 0;
};

/// Sum of pairwise 2-setting maxima is bounded by 3.
inline CheckResult check_theorem1(const TradeoffReport& r, double tol = 1e-9) {
    return {r.sum_f2_sq <= 3.0 + tol, 3.0 - r.sum_f2_sq};
}

struct Theorem2Result {
    bool pass = false;
    bool equality = false; // pure states sit exactly on the bound
    double margin = 0;
};

/// Sum of pairwise 3-setting maxima is bounded by 3; equality for pure states.
inline Theorem2Result check_theorem2(const TradeoffReport& r, double tol = 1e-9) {
    Theorem2Result out;
    out.pass = r.sum_f3_sq <= 3.0 + tol;
    out.equality = std::abs(r.sum_f3_sq - 3.0) <= tol;
    out.margin = 3.0 - r.sum_f3_sq;
    if (r.purity_flag && std::abs(r.sum_f3_sq - 3.0) > 1e-7)
        throw IdentityViolationError("check_theorem2: pure-state sum deviates from 3");
    return out;
}

/// Sum of squared Bell-CHSH maxima is bounded by 12 (and equals 4 * sum_f2).
inline CheckResult check_bell_monogamy(const TradeoffReport& r, double tol = 1e-8) {
    return {r.sum_bell_sq <= 12.0 + tol, 12.0 - r.sum_bell_sq};
}

struct ExclusivityVerdict {
    int violating_pairs = 0;      // pairs with f3_sq > 1 + tol
    bool has_maximal_pair = false; // some pair at f3_sq >= 3 - tol
    bool others_obey = true;       // then both other pairs <= 1 + tol
    bool consistent = true;        // violating_pairs <= 2 and others_obey
};

/// Not all pairs can violate the 3-setting inequality, and a maximal pair
/// forces the other two below the bound.
inline ExclusivityVerdict exclusivity_check(const TradeoffReport& r, double tol = 1e-9) {
    ExclusivityVerdict v;
    for (int p = 0; p < 3; ++p)
        if (r.f3_sq[static_cast<std::size_t>(p)] > 1.0 + tol) ++v.violating_pairs;
    for (int p = 0; p < 3; ++p) {
        if (r.f3_sq[static_cast<std::size_t>(p)] >= 3.0 - tol) {
            v.has_maximal_pair = true;
            for (int o = 0; o < 3; ++o)
                if (o != p && r.f3_sq[static_cast<std::size_t>(o)] > 1.0 + tol)
                    v.others_obey = false;
        }
    }
    v.consistent = v.violating_pairs <= 2 && v.others_obey;
    if (!v.consistent && check_theorem2(r, tol).pass)
        throw std::logic_error("exclusivity_check: verdict contradicts a passing trade-off sum");
    return v;
}

// ---- the one-parameter family saturating the complementarity relation -----

/// (|000> + m(|010> + |101>) + |111>) / sqrt(2 + 2m^2),  m in [0, 1].
inline PureState mdcc_state(double m) {
    if (!(m >= 0.0 && m <= 1.0)) throw ArgumentError("mdcc_state: m must lie in [0, 1]");
    const double norm = std::sqrt(2.0 + 2.0 * m * m);
    std::vector<cplx> a(8, cplx{0, 0});
    a[0] = 1.0 / norm;
    a[2] = m / norm;
    a[5] = m / norm;
    a[7] = 1.0 / norm;
    return PureState::from_amplitudes(3, a);
}

struct MdccPoint {
    double m = 0;
    // numerically computed from the state
    double f3_sq_ab = 0;
    double f3_sq_bc = 0;
    double f3_sq_ac = 0;
    double tangle = 0;
    double complementarity_lhs = 0; // 2*tangle + f3_sq_ac
    // closed forms
    double closed_f3_sq_ab = 0;
    double closed_f3_sq_ac = 0;
    double closed_tangle = 0;

    double max_closed_form_delta() const {
        const double d1 = std::abs(f3_sq_ab - closed_f3_sq_ab);
        const double d2 = std::abs(f3_sq_bc - closed_f3_sq_ab);
        const double d3 = std::abs(f3_sq_ac - closed_f3_sq_ac);
        const double d4 = std::abs(tangle - closed_tangle);
        return std::max(std::max(d1, d2), std::max(d3, d4));
    }
};

/// Evaluates the family both numerically and through its closed forms
///   f3_ab = f3_bc = ((1-m^2)/(1+m^2))^2,
///   f3_ac = 1 + 8 m^2/(1+m^2)^2,
///   tangle = 1 - 4 m^2/(1+m^2)^2,
/// for which 2*tangle + f3_ac = 3 identically.
inline MdccPoint mdcc_point(double m) {
    const PureState psi = mdcc_state(m);
    const TradeoffReport r = tradeoff_report(psi);

    MdccPoint p;
    p.m = m;
    p.f3_sq_ab = r.f3_sq[static_cast<std::size_t>(Pair::AB)];
    p.f3_sq_ac = r.f3_sq[static_cast<std::size_t>(Pair::AC)];
    p.f3_sq_bc = r.f3_sq[static_cast<std::size_t>(Pair::BC)];
    p.tangle = *r.tangle;
    p.complementarity_lhs = 2.0 * p.tangle + p.f3_sq_ac;

    const double d = 1.0 + m * m;
    p.closed_f3_sq_ab = ((1.0 - m * m) / d) * ((1.0 - m * m) / d);
    p.closed_f3_sq_ac = 1.0 + 8.0 * m * m / (d * d);
    p.closed_tangle = 1.0 - 4.0 * m * m / (d * d);
    return p;
}

struct ConjectureResult {
    double lhs = 0; // 2*tangle + max-pair f3_sq
    bool pass = false;
};

/// Conjectured bound 2*tau + max-pair f3_sq <= 3 for pure 3-qubit states.
inline ConjectureResult check_conjecture(const PureState& psi, double tol = 1e-9) {
    const TradeoffReport r = tradeoff_report(psi);
    ConjectureResult c;
    c.lhs = *r.complementarity_lhs;
    c.pass = c.lhs <= 3.0 + tol;
    return c;
}

} // namespace qsteer
