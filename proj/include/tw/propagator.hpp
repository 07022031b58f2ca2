#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "tw/potential.hpp"
#include "tw/step_kernel.hpp"

namespace tw {

/// Cauchy data of the fundamental system at a point, with a running log scale:
/// the stored matrices are exp(-log_scale) times the true solutions. One shared
/// scale keeps all Wronskian combinations consistently rescaled.
struct FundamentalState {
    double x = 0.0;
    cplx lambda{};
    Mat2 Phi, dPhi, Theta, dTheta;
    double log_scale = 0.0;
};

FundamentalState initial_state(const BoundaryParam& alpha, cplx lambda);

/// Integrate the fundamental system from 0 to x_target with the problem's step
/// policy. Throws OutOfDomain / StepUnderflow.
FundamentalState propagate(const Problem& p, cplx lambda, double x_target);

enum class GronwallCase { FixedValue, FixedDerivative };

struct GronwallBound {
    double x = 0.0;
    double bound = 0.0;
};

/// A-priori bound on ||F(x) - F0(x)|| for solutions of the perturbed equation,
/// in terms of kappa = max(|Re k|, |Im k|) and the accumulated potential
/// integral. FixedValue assumes F'(0) = 0, FixedDerivative assumes F(0) = 0.
GronwallBound gronwall_bound(GronwallCase c, cplx k, double norm0, double q_integral, double x);

/// Relative deviation of the propagated Phi(x, 2i kappa^2) from its large-kappa
/// closed form. Decays like O(1/kappa) for bounded potentials.
double large_kappa_deviation(const Problem& p, double kappa, double x);

namespace detail {

/// Coefficient matrix of Y'' = G(x) Y for the hermitized eigenvalue equation.
inline Mat2 g_matrix(const Potential& pot, double x, cplx lambda) {
    if (pot.is_scalar()) {
        cplx q = pot.value_at(x);
        return {std::conj(q), -lambda, -lambda, q};
    }
    return Mat2::sigma_x() * pot.matrix_at(x) - lambda * Mat2::sigma_x();
}

/// Rescale frames by a common factor when they grow past the threshold;
/// returns the log of the applied factor (0 if none).
inline double renorm_frames(std::span<Frame> frames, double threshold = 1e15) {
    double m = 0.0;
    for (const Frame& f : frames) m = std::max({m, f.y.max_abs(), f.dy.max_abs()});
    if (m <= threshold || m == 0.0) return 0.0;
    double inv = 1.0 / m;
    for (Frame& f : frames) {
        f.y = inv * f.y;
        f.dy = inv * f.dy;
    }
    return std::log(m);
}

/// March a set of frames of Y'' = G(x) Y from x0 to x1 (either direction) with
/// nominal step h, snapping nodes to the listed breakpoints and to x1.
/// after_step(x_prev, x_now) runs after every accepted step.
template <class GFn, class AfterStep>
void advance_frames_g(GFn&& g, std::span<const double> breakpoints, std::span<Frame> frames,
                      double x0, double x1, double h, AfterStep&& after_step) {
    if (x0 == x1) return;
    if (!(h > 1e-12)) throw StepUnderflow();
    const bool fwd = x1 > x0;
    // hard nodes: direction-ordered breakpoints strictly inside (x0, x1), then x1
    std::vector<double> hard;
    for (double b : breakpoints)
        if ((fwd && b > x0 && b < x1) || (!fwd && b < x0 && b > x1)) hard.push_back(b);
    std::sort(hard.begin(), hard.end());
    if (!fwd) std::reverse(hard.begin(), hard.end());
    hard.push_back(x1);

    StepFn step = active_step_kernel();
    double x = x0;
    for (double target : hard) {
        double len = std::abs(target - x);
        if (len == 0.0) continue;
        long n = std::max(1L, static_cast<long>(std::ceil(len / h)));
        double hs = (target - x) / static_cast<double>(n);
        // endpoint samples are nudged into the segment interior so that a jump
        // located exactly on a node is evaluated one-sided
        double nud = 1e-6 * hs;
        Mat2 g_here = g(x + nud);
        for (long i = 0; i < n; ++i) {
            double xa = x + static_cast<double>(i) * hs;
            double xb = (i == n - 1) ? target : xa + hs;
            Mat2 gm = g(0.5 * (xa + xb));
            Mat2 gb = g((i == n - 1) ? xb - nud : xb);
            for (Frame& f : frames) step(f, g_here, gm, gb, hs);
            g_here = gb;
            after_step(xa, xb);
        }
        x = target;
    }
}

/// Same, for the hermitized eigenvalue equation of a potential.
template <class AfterStep>
void advance_frames(const Potential& pot, cplx lambda, std::span<Frame> frames, double x0,
                    double x1, double h, AfterStep&& after_step) {
    advance_frames_g([&](double x) { return g_matrix(pot, x, lambda); }, pot.breakpoints(), frames,
                     x0, x1, h, after_step);
}

}  // namespace detail
}  // namespace tw
