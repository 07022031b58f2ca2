#pragma once

#include "tw/spectral.hpp"

namespace tw {

/// Derived data of the zero-potential problem: the two pole locations of its
/// M-function in the k-plane (finite nonzero alpha only).
struct FreeCaseParams {
    BoundaryParam alpha;
    std::optional<cplx> k_plus, k_minus;
};

FreeCaseParams free_case_params(const BoundaryParam& alpha);

/// Closed-form M-function of the zero-potential half-line problem.
Mat2 free_m(const BoundaryParam& alpha, cplx lambda);

struct FreePair {
    SpectralSample sample;
    std::optional<Atom> atom;  // present iff alpha is real positive and lambda = alpha^2
};

/// Closed-form spectral pair of the zero-potential problem at lambda > 0.
FreePair free_pair(const BoundaryParam& alpha, double lambda);

/// Scalar Titchmarsh-Weyl m-function of -f'' + q f with real-valued q and the
/// boundary parameter alpha (real or the Dirichlet point). Backward-integrated
/// decaying solution with the same tail closure machinery as the matrix path.
cplx scalar_m(const Potential& q_real, const BoundaryParam& alpha, cplx lambda);

/// Boundary density of the scalar spectral measure via the eps -> 0 limit of
/// Im m(lambda + i eps)/pi over the schedule.
double scalar_sigma_density(const Potential& q_real, const BoundaryParam& alpha, double lambda,
                            std::span<const double> eps_seq);

}  // namespace tw
