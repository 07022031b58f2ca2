#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <optional>

#include "tw/errors.hpp"

namespace tw {

using cplx = std::complex<double>;

/// Complex 2x2 matrix, value type. Row-major entries (a11, a12, a21, a22).
struct Mat2 {
    cplx a11{}, a12{}, a21{}, a22{};

    static Mat2 zero() { return {}; }
    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    /// Pauli sigma_x, the off-diagonal involution of the block structure.
    static Mat2 sigma_x() { return {0.0, 1.0, 1.0, 0.0}; }
    /// Pauli sigma_z, diag(1, -1).
    static Mat2 sigma_z() { return {1.0, 0.0, 0.0, -1.0}; }
    /// Projection onto the +1 eigenspace of sigma_x.
    static Mat2 p_plus() { return {0.5, 0.5, 0.5, 0.5}; }
    /// Projection onto the -1 eigenspace of sigma_x.
    static Mat2 p_minus() { return {0.5, -0.5, -0.5, 0.5}; }
    static Mat2 diag(cplx d1, cplx d2) { return {d1, 0.0, 0.0, d2}; }

    Mat2 operator+(const Mat2& o) const { return {a11 + o.a11, a12 + o.a12, a21 + o.a21, a22 + o.a22}; }
    Mat2 operator-(const Mat2& o) const { return {a11 - o.a11, a12 - o.a12, a21 - o.a21, a22 - o.a22}; }
    Mat2 operator-() const { return {-a11, -a12, -a21, -a22}; }
    Mat2 operator*(const Mat2& o) const {
        return {a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22,
                a21 * o.a11 + a22 * o.a21, a21 * o.a12 + a22 * o.a22};
    }
    Mat2& operator+=(const Mat2& o) { *this = *this + o; return *this; }
    Mat2& operator-=(const Mat2& o) { *this = *this - o; return *this; }

    friend Mat2 operator*(cplx s, const Mat2& m) { return {s * m.a11, s * m.a12, s * m.a21, s * m.a22}; }
    friend Mat2 operator*(double s, const Mat2& m) { return cplx(s) * m; }
    Mat2 operator*(cplx s) const { return s * *this; }
    Mat2 operator*(double s) const { return cplx(s) * *this; }

    cplx trace() const { return a11 + a22; }
    cplx det() const { return a11 * a22 - a12 * a21; }

    Mat2 transp() const { return {a11, a21, a12, a22}; }
    Mat2 conj() const { return {std::conj(a11), std::conj(a12), std::conj(a21), std::conj(a22)}; }
    Mat2 adjoint() const { return {std::conj(a11), std::conj(a21), std::conj(a12), std::conj(a22)}; }

    double fnorm() const {
        return std::sqrt(std::norm(a11) + std::norm(a12) + std::norm(a21) + std::norm(a22));
    }
    double max_abs() const {
        return std::max(std::max(std::abs(a11), std::abs(a12)), std::max(std::abs(a21), std::abs(a22)));
    }
};

inline Mat2 operator*(const Mat2& m, double s) { return cplx(s) * m; }

/// (M + M*)/2.
inline Mat2 herm_real(const Mat2& m) { return 0.5 * (m + m.adjoint()); }

/// (M - M*)/(2i); always Hermitian.
inline Mat2 herm_imag(const Mat2& m) { return cplx(0.0, -0.5) * (m - m.adjoint()); }

/// Eigenvalues of a Hermitian matrix, ascending. Uses the Hermitian part of m.
inline std::array<double, 2> herm_eigs(const Mat2& m) {
    double h11 = m.a11.real(), h22 = m.a22.real();
    cplx h12 = 0.5 * (m.a12 + std::conj(m.a21));
    double mid = 0.5 * (h11 + h22);
    double rad = std::sqrt(0.25 * (h11 - h22) * (h11 - h22) + std::norm(h12));
    return {mid - rad, mid + rad};
}

/// Spectral (operator 2-) norm.
inline double opnorm(const Mat2& m) {
    Mat2 g = m.adjoint() * m;
    return std::sqrt(std::max(0.0, herm_eigs(g)[1]));
}

inline bool is_hermitian(const Mat2& m, double tol) {
    return (m - m.adjoint()).fnorm() <= tol * (1.0 + m.fnorm());
}

inline bool is_psd(const Mat2& m, double tol) {
    return is_hermitian(m, tol) && herm_eigs(m)[0] >= -tol * (1.0 + m.fnorm());
}

inline bool is_nonsingular(const Mat2& m, double tol = 1e-13) {
    return std::abs(m.det()) > tol * m.fnorm();
}

/// Inverse with a determinant threshold scaled by the matrix norm.
/// Throws SingularMatrix below the threshold (the caller is typically probing
/// an eigenvalue of a truncated problem).
inline Mat2 inverse(const Mat2& m, double tol = 1e-13) {
    cplx d = m.det();
    if (std::abs(d) <= tol * m.fnorm()) throw SingularMatrix();
    cplx s = 1.0 / d;
    return {s * m.a22, -s * m.a12, -s * m.a21, s * m.a11};
}

/// Solve m * x = rhs without forming the inverse explicitly.
inline Mat2 solve(const Mat2& m, const Mat2& rhs, double tol = 1e-13) {
    return inverse(m, tol) * rhs;
}

/// Boundary parameter: finite complex alpha or the Dirichlet point at infinity.
struct BoundaryParam {
    bool infinite = false;
    cplx alpha{};

    static BoundaryParam finite(cplx a) { return {false, a}; }
    static BoundaryParam inf() { return {true, {}}; }

    bool is_real() const { return infinite || alpha.imag() == 0.0; }
    BoundaryParam conjugated() const { return infinite ? *this : finite(std::conj(alpha)); }
};

struct RobinMatrices {
    Mat2 S, C;
    std::optional<Mat2> A;  // diag(conj(alpha), alpha); absent for the Dirichlet point
};

/// The pair (S, C) encoding the boundary condition C F(0) + S sigma_x F'(0) = 0,
/// normalised so that S^2 + C^2 = I and SC = CS.
inline RobinMatrices robin_matrices(const BoundaryParam& bp) {
    if (bp.infinite) return {Mat2::zero(), Mat2::sigma_x(), std::nullopt};
    double w = 1.0 / std::sqrt(1.0 + std::norm(bp.alpha));
    Mat2 A = Mat2::diag(std::conj(bp.alpha), bp.alpha);
    return {w * Mat2::identity(), w * (Mat2::sigma_x() * A), A};
}

}  // namespace tw
