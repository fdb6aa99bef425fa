#pragma once

#include <array>
#include <cmath>

#include "qsteer/rng.hpp"
#include "qsteer/state.hpp"

namespace qsteer {

/// Measurement directions for the n-setting steering functional:
/// unit vectors u_i on the untrusted side, orthonormal v_i on the trusted one.
struct MeasurementSettings {
    int n = 2;
    std::array<Vec3, 3> u{};
    std::array<Vec3, 3> v{};

    static MeasurementSettings checked(int n, const std::array<Vec3, 3>& u,
                                       const std::array<Vec3, 3>& v) {
        if (n != 2 && n != 3) throw ArgumentError("MeasurementSettings: n must be 2 or 3");
        for (int i = 0; i < n; ++i)
            if (std::abs(u[static_cast<std::size_t>(i)].norm() - 1.0) > 1e-10)
                throw ArgumentError("MeasurementSettings: u_i is not a unit vector");
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const double want = (i == j) ? 1.0 : 0.0;
                if (std::abs(dot(v[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(j)]) -
                             want) > 1e-10)
                    throw ArgumentError("MeasurementSettings: v_i are not orthonormal");
            }
        return MeasurementSettings{n, u, v};
    }
};

/// Closed-form maxima for one two-qubit state.
struct ViolationReport {
    double f2_sq = 0;   //  t1^2 + t2^2
    double f3_sq = 0;   //  t1^2 + t2^2 + t3^2
    double bell_max = 0; // 2 sqrt(f2_sq)
    std::array<double, 3> singulars{};
};

/// F_n(rho, mu) = (1/sqrt(n)) |sum_i u_i^T T v_i|.
inline double steering_functional(const DensityMatrix& rho2, const MeasurementSettings& mu) {
    const CorrelationMatrix tm = correlation_matrix(rho2);
    double s = 0;
    for (int i = 0; i < mu.n; ++i)
        s += dot(mu.u[static_cast<std::size_t>(i)], tm.t() * mu.v[static_cast<std::size_t>(i)]);
    return std::abs(s) / std::sqrt(static_cast<double>(mu.n));
}

/// Square of the maximal 2-setting steering value: t1^2 + t2^2.
inline double f2_max_sq(const DensityMatrix& rho2) {
    const auto sv = correlation_matrix(rho2).singular_values();
    return sv[0] * sv[0] + sv[1] * sv[1];
}

/// Square of the maximal 3-setting steering value: t1^2 + t2^2 + t3^2
/// (the Frobenius norm of T squared). Violation iff > 1.
inline double f3_max_sq(const DensityMatrix& rho2) {
    return correlation_matrix(rho2).frobenius_sq();
}

/// Horodecki maximum of the Bell-CHSH value, 2 sqrt(t1^2 + t2^2).
inline double bell_chsh_max(const DensityMatrix& rho2) {
    return 2.0 * std::sqrt(f2_max_sq(rho2));
}

inline ViolationReport violation_report(const DensityMatrix& rho2) {
    const CorrelationMatrix tm = correlation_matrix(rho2);
    const auto sv = tm.singular_values();
    ViolationReport r;
    r.singulars = sv;
    r.f2_sq = sv[0] * sv[0] + sv[1] * sv[1];
    r.f3_sq = r.f2_sq + sv[2] * sv[2];
    r.bell_max = 2.0 * std::sqrt(r.f2_sq);
    return r;
}

/// "Violates" uses a strict predicate so boundary states do not count.
inline bool violates(double value, double bound, double tol = 1e-9) {
    return value > bound + tol;
}

struct OptimizedSettings {
    MeasurementSettings settings;
    double value = 0;
};

namespace detail {

inline Mat3 rotation_from_axis_angle(const Vec3& w) {
    const double th = w.norm();
    if (th < 1e-300) return Mat3::identity();
    const Vec3 k{w.x / th, w.y / th, w.z / th};
    Mat3 kx;
    kx(0, 1) = -k.z; kx(0, 2) = k.y;
    kx(1, 0) = k.z;  kx(1, 2) = -k.x;
    kx(2, 0) = -k.y; kx(2, 1) = k.x;
    const Mat3 kx2 = kx * kx;
    Mat3 r = Mat3::identity();
    const double s = std::sin(th), c1 = 1.0 - std::cos(th);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r(i, j) += s * kx(i, j) + c1 * kx2(i, j);
    return r;
}

// With the frame fixed, the optimal u_i is T v_i normalized, giving
// sum_i |T v_i| as the objective over frames.
inline double frame_objective(const Mat3& t, const Mat3& frame, int n) {
    double s = 0;
    for (int i = 0; i < n; ++i) {
        Vec3 vi{frame(0, i), frame(1, i), frame(2, i)};
        s += (t * vi).norm();
    }
    return s / std::sqrt(static_cast<double>(n));
}

} // namespace detail

/// Numeric maximization of F_n over measurement settings; a cross-check
/// oracle for the closed forms. Deterministic per seed. Each restart draws a
/// random orthonormal frame and hill-climbs it with random rotations
/// (the u_i maximization is exact at every step).
inline OptimizedSettings optimize_settings(const DensityMatrix& rho2, int n, int restarts,
                                           std::uint64_t seed) {
    if (n != 2 && n != 3) throw ArgumentError("optimize_settings: n must be 2 or 3");
    if (restarts < 1) throw ArgumentError("optimize_settings: restarts must be >= 1");
    const Mat3 t = correlation_matrix(rho2).t();

    double best_val = -1.0;
    Mat3 best_frame = Mat3::identity();

    for (int rs = 0; rs < restarts; ++rs) {
        SplitMix64 rng = SplitMix64::substream(seed, static_cast<std::uint64_t>(rs));
        Mat3 frame = random_frame(rng);
        double val = detail::frame_objective(t, frame, n);
        double step = 0.4;
        int rejects = 0;
        for (int it = 0; it < 200; ++it) {
            const Vec3 w{rng.next_gaussian() * step, rng.next_gaussian() * step,
                         rng.next_gaussian() * step};
            const Mat3 cand = detail::rotation_from_axis_angle(w) * frame;
            const double cv = detail::frame_objective(t, cand, n);
            if (cv > val) {
                const bool converged = (cv - val) < 1e-10;
                frame = cand;
                val = cv;
                if (converged) break;
                step = std::min(0.8, step * 1.3);
                rejects = 0;
            } else if (++rejects >= 6) {
                step = std::max(1e-7, step * 0.6);
                rejects = 0;
            }
        }
        if (val > best_val) { // ties keep the lowest restart index
            best_val = val;
            best_frame = frame;
        }
    }

    std::array<Vec3, 3> u{}, v{};
    for (int i = 0; i < n; ++i) {
        const Vec3 vi{best_frame(0, i), best_frame(1, i), best_frame(2, i)};
        v[static_cast<std::size_t>(i)] = vi;
        const Vec3 tv = t * vi;
        const double tn = tv.norm();
        // Zero T v_i contributes nothing; any unit u_i works.
        u[static_cast<std::size_t>(i)] =
            tn > 1e-300 ? Vec3{tv.x / tn, tv.y / tn, tv.z / tn} : Vec3{0, 0, 1};
    }
    if (n == 2) {
        u[2] = Vec3{0, 0, 1};
        v[2] = Vec3{0, 0, 0};
    }
    OptimizedSettings out{MeasurementSettings{n, u, v}, best_val};
    out.settings = MeasurementSettings::checked(n, u, v);
    return out;
}

} // namespace qsteer
