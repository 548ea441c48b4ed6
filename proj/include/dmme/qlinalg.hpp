#pragma once

// Dense 2x2 complex linear algebra for two-level systems: matrices, kets,
// Pauli constants, density-matrix and Bloch-vector views. Everything is a
// plain value type; nothing here allocates.

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace dmme {

using cplx = std::complex<double>;

inline constexpr cplx iu{0.0, 1.0};

// Two-component complex vector. Convention: |1> = (1,0)^T, |0> = (0,1)^T,
// so sigma_z|1> = |1>.
struct Vec2 {
    cplx c1{0.0, 0.0};
    cplx c2{0.0, 0.0};
};

inline Vec2 operator+(const Vec2& a, const Vec2& b) { return {a.c1 + b.c1, a.c2 + b.c2}; }
inline Vec2 operator-(const Vec2& a, const Vec2& b) { return {a.c1 - b.c1, a.c2 - b.c2}; }
inline Vec2 operator*(cplx s, const Vec2& v) { return {s * v.c1, s * v.c2}; }
inline Vec2 operator*(const Vec2& v, cplx s) { return s * v; }

// <a|b> with conjugation on the left argument.
inline cplx inner(const Vec2& a, const Vec2& b) {
    return std::conj(a.c1) * b.c1 + std::conj(a.c2) * b.c2;
}

inline double norm(const Vec2& v) { return std::sqrt(std::real(inner(v, v))); }

inline Vec2 normalized(const Vec2& v) {
    const double n = norm(v);
    if (n == 0.0) throw std::invalid_argument("cannot normalize zero vector");
    return {v.c1 / n, v.c2 / n};
}

// Row-major 2x2 complex matrix.
struct Mat2 {
    std::array<cplx, 4> e{{{0, 0}, {0, 0}, {0, 0}, {0, 0}}};

    Mat2() = default;
    Mat2(cplx a11, cplx a12, cplx a21, cplx a22) : e{{a11, a12, a21, a22}} {}

    cplx& operator()(int i, int j) { return e[static_cast<size_t>(2 * i + j)]; }
    const cplx& operator()(int i, int j) const { return e[static_cast<size_t>(2 * i + j)]; }

    static Mat2 zero() { return {}; }
    static Mat2 identity() { return {1, 0, 0, 1}; }
};

inline Mat2 operator+(const Mat2& a, const Mat2& b) {
    return {a.e[0] + b.e[0], a.e[1] + b.e[1], a.e[2] + b.e[2], a.e[3] + b.e[3]};
}
inline Mat2 operator-(const Mat2& a, const Mat2& b) {
    return {a.e[0] - b.e[0], a.e[1] - b.e[1], a.e[2] - b.e[2], a.e[3] - b.e[3]};
}
inline Mat2 operator*(cplx s, const Mat2& m) { return {s * m.e[0], s * m.e[1], s * m.e[2], s * m.e[3]}; }
inline Mat2 operator*(const Mat2& m, cplx s) { return s * m; }
inline Mat2 operator*(double s, const Mat2& m) { return cplx(s, 0.0) * m; }
inline Mat2 operator*(const Mat2& a, const Mat2& b) {
    return {a.e[0] * b.e[0] + a.e[1] * b.e[2], a.e[0] * b.e[1] + a.e[1] * b.e[3],
            a.e[2] * b.e[0] + a.e[3] * b.e[2], a.e[2] * b.e[1] + a.e[3] * b.e[3]};
}
inline Vec2 operator*(const Mat2& m, const Vec2& v) {
    return {m.e[0] * v.c1 + m.e[1] * v.c2, m.e[2] * v.c1 + m.e[3] * v.c2};
}

inline Mat2 sigma_x() { return {0, 1, 1, 0}; }
inline Mat2 sigma_y() { return {0, -iu, iu, 0}; }
inline Mat2 sigma_z() { return {1, 0, 0, -1}; }

inline Mat2 dagger(const Mat2& m) {
    return {std::conj(m.e[0]), std::conj(m.e[2]), std::conj(m.e[1]), std::conj(m.e[3])};
}

inline Mat2 commutator(const Mat2& a, const Mat2& b) { return a * b - b * a; }
inline Mat2 anticommutator(const Mat2& a, const Mat2& b) { return a * b + b * a; }

inline cplx trace(const Mat2& m) { return m.e[0] + m.e[3]; }

// |a><b|
inline Mat2 outer(const Vec2& a, const Vec2& b) {
    return {a.c1 * std::conj(b.c1), a.c1 * std::conj(b.c2),
            a.c2 * std::conj(b.c1), a.c2 * std::conj(b.c2)};
}

inline double frobenius_norm(const Mat2& m) {
    double s = 0.0;
    for (const auto& x : m.e) s += std::norm(x);
    return std::sqrt(s);
}

inline double hermiticity_defect(const Mat2& m) { return frobenius_norm(m - dagger(m)); }

// Eigenvalues of a (numerically) Hermitian matrix, ascending.
inline std::array<double, 2> hermitian_eigenvalues(const Mat2& m) {
    const double a = std::real(m.e[0]);
    const double d = std::real(m.e[3]);
    const cplx b = 0.5 * (m.e[1] + std::conj(m.e[2]));
    const double h = 0.5 * (a - d);
    const double r = std::sqrt(h * h + std::norm(b));
    const double mid = 0.5 * (a + d);
    return {mid - r, mid + r};
}

struct BlochVector {
    double rx{0.0};
    double ry{0.0};
    double rz{0.0};

    double length() const { return std::sqrt(rx * rx + ry * ry + rz * rz); }
};

struct DensityMatrix {
    Mat2 mat;

    DensityMatrix() : mat(Mat2::identity() * cplx(0.5, 0.0)) {}

    // Validating constructor: Hermitian within 1e-10, unit trace within 1e-8.
    explicit DensityMatrix(const Mat2& m) : mat(m) {
        if (hermiticity_defect(m) > 1e-10)
            throw std::invalid_argument("density matrix is not Hermitian");
        if (std::abs(trace(m) - cplx(1.0, 0.0)) > 1e-8)
            throw std::invalid_argument("density matrix trace is not 1");
    }

    // For integrator output, where the invariants are monitored rather than
    // enforced.
    static DensityMatrix unchecked(const Mat2& m) {
        DensityMatrix rho;
        rho.mat = m;
        return rho;
    }

    static DensityMatrix pure(const Vec2& psi) { return DensityMatrix(outer(psi, psi)); }
};

// r_n = Tr(rho sigma_n)
inline BlochVector bloch_of(const DensityMatrix& rho) {
    const Mat2& m = rho.mat;
    return {std::real(trace(m * sigma_x())), std::real(trace(m * sigma_y())),
            std::real(trace(m * sigma_z()))};
}

inline DensityMatrix state_of(const BlochVector& b) {
    if (b.length() > 1.0 + 1e-7)
        throw std::invalid_argument("Bloch vector lies outside the unit ball");
    Mat2 m = 0.5 * (Mat2::identity() + b.rx * sigma_x() + b.ry * sigma_y() + b.rz * sigma_z());
    return DensityMatrix::unchecked(m);
}

inline double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
    const auto ev = hermitian_eigenvalues(a.mat - b.mat);
    return 0.5 * (std::abs(ev[0]) + std::abs(ev[1]));
}

}  // namespace dmme
