#pragma once

#include <optional>
#include <span>
#include <vector>

#include "tw/weyl.hpp"

namespace tw {

/// One point of the extracted spectral pair on the positive axis.
struct SpectralSample {
    double s = 0.0;           // spectral variable
    double nu_density = 0.0;  // density of nu w.r.t. Lebesgue
    cplx psi{};               // phase function; meaningful only if psi_defined
    double err_est = 0.0;
    bool psi_defined = true;
};

/// A point mass of the spectral measure.
struct Atom {
    double location = 0.0;
    double nu_mass = 0.0;
    cplx psi_value{};
};

struct DensityMatrix {
    Mat2 density;  // Hermitian PSD limit of Im M / pi
    double err_est = 0.0;
};

inline std::vector<double> default_eps_schedule() { return {1e-2, 5e-3, 2.5e-3}; }
inline std::vector<double> default_delta_schedule() { return {4e-3, 2e-3, 1e-3}; }

/// Boundary density of the matrix spectral measure at real lambda via the
/// eps -> 0+ limit of Im M(lambda + i eps)/pi, polynomial-extrapolated over
/// eps_seq. Caller must keep lambda outside atom exclusion windows.
DensityMatrix stieltjes_density(const Problem& p, double lambda, std::span<const double> eps_seq,
                                double m_tol = 1e-7);

struct PairDecomposition {
    double nu_density = 0.0;
    cplx psi{};
    bool psi_defined = true;
};

/// Split a density matrix into the scalar density (mean of the diagonal) and
/// the phase (off-diagonal over density). Throws AsymmetricDensity when the
/// diagonal entries disagree beyond tol; flags psi undefined below noise_floor.
PairDecomposition decompose_pair(const Mat2& density, double tol = 1e-3, double noise_floor = 1e-10);

/// The phase, or ZeroDensity where the density is below the noise floor.
inline cplx require_psi(const PairDecomposition& pd) {
    if (!pd.psi_defined) throw ZeroDensity();
    return pd.psi;
}

/// Point-mass extraction at real lambda from the delta -> 0+ limit of
/// -i delta M(lambda + i delta). Returns nothing below the mass floor.
std::optional<Atom> detect_atom(const Problem& p, double lambda, std::span<const double> delta_seq,
                                double mass_floor = 1e-4, double m_tol = 1e-7);

struct RatioOptions {
    std::vector<double> eps_base = default_eps_schedule();
    bool scale_eps = true;        // scale schedule by max(1, sqrt|lambda|)
    double nodes_per_unit = 4.0;  // quadrature nodes per unit of sqrt|lambda|
    std::optional<std::vector<Atom>> atoms;  // detected atoms; scanned if absent
    double atom_scan_cap = 6.0;
};

/// |Sigma|(sign * r) / r^{1/2} (finite alpha) or / r^{3/2} (Dirichlet):
/// integrated a.c. density on a sqrt-graded grid plus detected point masses.
Mat2 distribution_ratio(const Problem& p, double r, int sign, const RatioOptions& opts = {});

/// Scalar spectral data of a self-adjoint operator, sampled on lambda >= 0.
struct ScalarMeasureSamples {
    std::vector<double> lambda;       // sample locations
    std::vector<double> density;      // sigma'(lambda)
    std::vector<Atom> atoms;          // scalar atoms: (location, mass, unused phase)
};

struct ShiftedPair {
    std::vector<SpectralSample> samples;  // on s >= |omega|
    std::vector<Atom> atoms;
};

/// Spectral pair of the imaginary-shifted operator from the scalar measure of
/// the unshifted self-adjoint one; s^2 = lambda^2 + omega^2, Im psi(s) = omega/s
/// exactly by construction.
ShiftedPair scalar_to_pair_shift(const ScalarMeasureSamples& sigma, double omega);

/// Max over the grid of |sigma'(s) - (1 + psi(s)) nu'(s)| for a self-adjoint
/// problem (real q, real or Dirichlet alpha); the two sides come from the
/// independent scalar and matrix pipelines.
double selfadjoint_check(const Problem& p, std::span<const double> grid,
                         std::span<const double> eps_seq);

}  // namespace tw
