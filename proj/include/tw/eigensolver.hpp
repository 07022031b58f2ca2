#pragma once

#include <vector>

#include "tw/spectral.hpp"

namespace tw {

/// Normalized solution of the antilinear eigenvalue equation
/// -e'' + q e = lambda conj(e) with the problem's boundary condition,
/// realified as two coupled real equations and shot from x = 0.
struct DistinguishedSolution {
    double lambda = 0.0;
    std::vector<double> xs;
    std::vector<cplx> values;
    double norm_defect = 0.0;
    cplx ell{};  // boundary functional (conj(alpha) e'(0) - e(0)) / sqrt(1+|alpha|^2)
};

struct ScanOptions {
    double grid_step = 0.05;
    double b_work = 0.0;          // 0: choose from the potential support
    double accept_ratio = 1e-6;   // tail-to-head L2 norm ratio for acceptance
    double candidate_ratio = 1e-2;
    double degenerate_gap = 10.0;  // 2nd shooting direction within this factor => Degenerate
};

/// Simple singular values (eigenvalues of |H|) inside [lo, hi], located as
/// sharp minima of the boundary/decay mismatch of the realified shooting
/// system, refined by golden-section search.
std::vector<double> find_singular_values(const Problem& p, double lo, double hi,
                                         const ScanOptions& opts = {});

/// The distinguished solution at a located simple singular value.
DistinguishedSolution distinguished_solution(const Problem& p, double lambda,
                                             const ScanOptions& opts = {});

/// Spectral-pair point mass carried by a distinguished solution:
/// mass |ell|^2 / 2, phase conj(ell^2)/|ell|^2 (unimodular by construction).
Atom pair_at_eigenvalue(const DistinguishedSolution& d);

}  // namespace tw
