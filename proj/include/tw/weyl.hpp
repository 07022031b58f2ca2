#pragma once

#include "tw/propagator.hpp"

namespace tw {

/// M-function value with a certified (or, on the backward paths, estimated)
/// bound on the distance to the true b -> infinity limit.
struct MFunctionValue {
    cplx lambda{};
    Mat2 M;
    double disk_radius = 0.0;
    double b_used = 0.0;
};

struct WeylDisk {
    double b = 0.0;
    cplx lambda{};
    Mat2 center;
    double radius = 0.0;
};

/// M-function of the problem truncated to [0, b] with the given right boundary
/// condition (Dirichlet for the infinite parameter). Im lambda != 0 required.
Mat2 m_finite(const Problem& p, cplx lambda, double b, const BoundaryParam& right_bc);

/// Nested matrix ball containing every truncated M-value beyond b, from the
/// accumulated quadratic form of the fundamental system (completed square).
/// The radius is a rigorous bound at every b, but its computation saturates at
/// a roundoff floor that grows like exp(2(Re k - Im k) b); past that point the
/// reported radius degrades (while staying valid). Throws once the form's
/// smallest eigenvalue itself is unresolvable in doubles.
WeylDisk weyl_disk(const Problem& p, cplx lambda, double b);

double disk_radius(const Problem& p, cplx lambda, double b);

/// Half-line (or finite-interval) M-function.
///
/// Strategy is chosen per lambda:
///  - forward truncation on the geometric b schedule with the exact disk
///    geometry as certificate, whenever the two solution channels' growth
///    gap keeps the certificate floating-point meaningful;
///  - otherwise a backward-integrated Weyl-subspace frame, closed either with
///    the exact decaying solutions of the constant-tail equation beyond the
///    potential's effective support, or with Dirichlet data on the b schedule
///    plus rate-based extrapolation.
/// disk_radius in the result is the certificate resp. the error estimate.
MFunctionValue m_limit(const Problem& p, cplx lambda, double tol);

/// Boundary-parameter transform: M-function for parameter alpha from the
/// Neumann (alpha = 0) M-function of the same potential.
Mat2 m_transform_alpha(const Mat2& m0, const BoundaryParam& alpha);

/// Truncated large-|k| expansion (through 1/k^2 for finite alpha, leading term
/// for Dirichlet), lambda = k^2 with k in the first quadrant.
Mat2 m_asymptotic(const BoundaryParam& alpha, cplx lambda);

/// Matrix kernel of the resolvent at (x, y); Im lambda != 0.
Mat2 resolvent_kernel(const Problem& p, cplx lambda, double x, double y,
                      double tol = 1e-8);

namespace testhooks {

/// Negative-control hook: mis-select the decaying branch of the tail closure
/// (and suppress the forward path so the broken branch is actually exercised).
/// Breaks the Herglotz property on purpose; never set outside tests.
void flip_k_branch(bool on);
bool k_branch_flipped();

}  // namespace testhooks

namespace detail {

/// Exact decaying-solution closure frame of the constant-coefficient equation
/// with scalar potential value q_inf, at spectral parameter lambda (Im > 0).
/// Columns are (v, mu v) for the two characteristic exponents with Re mu < 0.
Frame constant_tail_frame(cplx q_inf, cplx lambda);

/// Recover M from a frame spanning the Weyl subspace at x = 0.
Mat2 m_from_frame(const Frame& w, const BoundaryParam& alpha);

/// Orthonormalize the two C^4 columns of a frame (span is preserved).
void orthonormalize(Frame& w);

}  // namespace detail
}  // namespace tw
