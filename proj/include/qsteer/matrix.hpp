#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <span>

#include "qsteer/errors.hpp"

namespace qsteer {

using cplx = std::complex<double>;

inline bool is_finite(cplx z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// Complex vector of dimension <= 8, stack-allocated.
class CVec {
  public:
    explicit CVec(int n) : n_(n) {
        if (n < 1 || n > 8) throw ArgumentError("CVec: dimension must be 1..8");
        a_.fill(cplx{0.0, 0.0});
    }

    int dim() const { return n_; }
    cplx& operator[](int i) { return a_[static_cast<std::size_t>(i)]; }
    cplx operator[](int i) const { return a_[static_cast<std::size_t>(i)]; }

    double norm_sq() const {
        double s = 0;
        for (int i = 0; i < n_; ++i) s += std::norm(a_[static_cast<std::size_t>(i)]);
        return s;
    }
    double norm() const { return std::sqrt(norm_sq()); }

  private:
    int n_;
    std::array<cplx, 8> a_;
};

inline cplx inner(const CVec& x, const CVec& y) {
    cplx s{0, 0};
    for (int i = 0; i < x.dim(); ++i) s += std::conj(x[i]) * y[i];
    return s;
}

/// Square complex matrix of dimension <= 8, stack-allocated, row-major.
class CMat {
  public:
    explicit CMat(int n) : n_(n) {
        if (n < 1 || n > 8) throw ArgumentError("CMat: dimension must be 1..8");
        a_.fill(cplx{0.0, 0.0});
    }

    static CMat identity(int n) {
        CMat m(n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int dim() const { return n_; }
    cplx& operator()(int r, int c) { return a_[static_cast<std::size_t>(r * n_ + c)]; }
    cplx operator()(int r, int c) const { return a_[static_cast<std::size_t>(r * n_ + c)]; }

    cplx trace() const {
        cplx s{0, 0};
        for (int i = 0; i < n_; ++i) s += (*this)(i, i);
        return s;
    }

    CMat adjoint() const {
        CMat m(n_);
        for (int r = 0; r < n_; ++r)
            for (int c = 0; c < n_; ++c) m(c, r) = std::conj((*this)(r, c));
        return m;
    }

    CMat conj() const {
        CMat m(n_);
        for (int r = 0; r < n_; ++r)
            for (int c = 0; c < n_; ++c) m(r, c) = std::conj((*this)(r, c));
        return m;
    }

    double frobenius_norm() const {
        double s = 0;
        for (int r = 0; r < n_; ++r)
            for (int c = 0; c < n_; ++c) s += std::norm((*this)(r, c));
        return std::sqrt(s);
    }

    double max_abs() const {
        double m = 0;
        for (int r = 0; r < n_; ++r)
            for (int c = 0; c < n_; ++c) m = std::max(m, std::abs((*this)(r, c)));
        return m;
    }

    bool all_finite() const {
        for (int r = 0; r < n_; ++r)
            for (int c = 0; c < n_; ++c)
                if (!is_finite((*this)(r, c))) return false;
        return true;
    }

    /// Max entrywise |m_ij - conj(m_ji)|.
    double hermiticity_defect() const {
        double d = 0;
        for (int r = 0; r < n_; ++r)
            for (int c = 0; c < n_; ++c)
                d = std::max(d, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
        return d;
    }

  private:
    int n_;
    std::array<cplx, 64> a_;
};

inline CMat operator+(const CMat& a, const CMat& b) {
    CMat m(a.dim());
    for (int r = 0; r < a.dim(); ++r)
        for (int c = 0; c < a.dim(); ++c) m(r, c) = a(r, c) + b(r, c);
    return m;
}

inline CMat operator-(const CMat& a, const CMat& b) {
    CMat m(a.dim());
    for (int r = 0; r < a.dim(); ++r)
        for (int c = 0; c < a.dim(); ++c) m(r, c) = a(r, c) - b(r, c);
    return m;
}

inline CMat operator*(const CMat& a, const CMat& b) {
    CMat m(a.dim());
    for (int r = 0; r < a.dim(); ++r)
        for (int k = 0; k < a.dim(); ++k) {
            const cplx ark = a(r, k);
            if (ark == cplx{0, 0}) continue;
            for (int c = 0; c < a.dim(); ++c) m(r, c) += ark * b(k, c);
        }
    return m;
}

inline CMat operator*(cplx s, const CMat& a) {
    CMat m(a.dim());
    for (int r = 0; r < a.dim(); ++r)
        for (int c = 0; c < a.dim(); ++c) m(r, c) = s * a(r, c);
    return m;
}

inline CVec operator*(const CMat& a, const CVec& x) {
    CVec y(a.dim());
    for (int r = 0; r < a.dim(); ++r) {
        cplx s{0, 0};
        for (int c = 0; c < a.dim(); ++c) s += a(r, c) * x[c];
        y[r] = s;
    }
    return y;
}

/// Kronecker product; result dimension must stay <= 8.
inline CMat kron(const CMat& a, const CMat& b) {
    const int na = a.dim(), nb = b.dim();
    CMat m(na * nb);
    for (int ra = 0; ra < na; ++ra)
        for (int ca = 0; ca < na; ++ca) {
            const cplx v = a(ra, ca);
            if (v == cplx{0, 0}) continue;
            for (int rb = 0; rb < nb; ++rb)
                for (int cb = 0; cb < nb; ++cb)
                    m(ra * nb + rb, ca * nb + cb) = v * b(rb, cb);
        }
    return m;
}

inline CMat outer(const CVec& x, const CVec& y) {
    CMat m(x.dim());
    for (int r = 0; r < x.dim(); ++r)
        for (int c = 0; c < x.dim(); ++c) m(r, c) = x[r] * std::conj(y[c]);
    return m;
}

// ---- small real types ----------------------------------------------------

struct Vec3 {
    double x = 0, y = 0, z = 0;

    double norm() const { return std::sqrt(x * x + y * y + z * z); }
    double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
    double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
};

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline Vec3 operator*(double s, const Vec3& v) { return {s * v.x, s * v.y, s * v.z}; }

/// 3x3 real matrix, row-major.
struct Mat3 {
    std::array<double, 9> a{};

    static Mat3 identity() {
        Mat3 m;
        m(0, 0) = m(1, 1) = m(2, 2) = 1.0;
        return m;
    }

    double& operator()(int r, int c) { return a[static_cast<std::size_t>(3 * r + c)]; }
    double operator()(int r, int c) const { return a[static_cast<std::size_t>(3 * r + c)]; }

    double frobenius_sq() const {
        double s = 0;
        for (double v : a) s += v * v;
        return s;
    }
};

inline Vec3 operator*(const Mat3& m, const Vec3& v) {
    return {m(0, 0) * v.x + m(0, 1) * v.y + m(0, 2) * v.z,
            m(1, 0) * v.x + m(1, 1) * v.y + m(1, 2) * v.z,
            m(2, 0) * v.x + m(2, 1) * v.y + m(2, 2) * v.z};
}

inline Mat3 operator*(const Mat3& a, const Mat3& b) {
    Mat3 m;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            double s = 0;
            for (int k = 0; k < 3; ++k) s += a(r, k) * b(k, c);
            m(r, c) = s;
        }
    return m;
}

inline Mat3 transpose(const Mat3& m) {
    Mat3 t;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) t(r, c) = m(c, r);
    return t;
}

} // namespace qsteer
