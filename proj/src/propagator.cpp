#include "tw/propagator.hpp"

#include <array>

namespace tw {

FundamentalState initial_state(const BoundaryParam& alpha, cplx lambda) {
    RobinMatrices rm = robin_matrices(alpha);
    Mat2 sx = Mat2::sigma_x();
    FundamentalState st;
    st.x = 0.0;
    st.lambda = lambda;
    st.Phi = rm.S;
    st.dPhi = -(sx * rm.C);
    st.Theta = rm.C;
    st.dTheta = sx * rm.S;
    st.log_scale = 0.0;
    return st;
}

FundamentalState propagate(const Problem& p, cplx lambda, double x_target) {
    if (x_target < 0.0 || x_target > p.potential.domain_length()) throw OutOfDomain();
    FundamentalState st = initial_state(p.alpha, lambda);
    st.x = x_target;
    if (x_target == 0.0) return st;

    std::array<Frame, 2> frames = {Frame{st.Phi, st.dPhi}, Frame{st.Theta, st.dTheta}};
    double h = p.ode_step.step_for(lambda);
    detail::advance_frames(p.potential, lambda, frames, 0.0, x_target, h,
                           [&](double, double) { st.log_scale += detail::renorm_frames(frames); });
    st.Phi = frames[0].y;
    st.dPhi = frames[0].dy;
    st.Theta = frames[1].y;
    st.dTheta = frames[1].dy;
    return st;
}

GronwallBound gronwall_bound(GronwallCase c, cplx k, double norm0, double q_integral, double x) {
    if (k == cplx(0.0)) throw ZeroK();
    double kappa = std::max(std::abs(k.real()), std::abs(k.imag()));
    double factor = std::expm1(2.0 / std::abs(k) * q_integral);
    double pre = (c == GronwallCase::FixedValue) ? 2.0 * norm0 : 2.0 / std::abs(k) * norm0;
    return {x, pre * std::exp(kappa * x) * factor};
}

double large_kappa_deviation(const Problem& p, double kappa, double x) {
    if (!(kappa > 0.0)) throw ZeroK("kappa must be positive");
    cplx lambda(0.0, 2.0 * kappa * kappa);
    FundamentalState st = propagate(p, lambda, x);

    RobinMatrices rm = robin_matrices(p.alpha);
    cplx ep = std::exp(cplx(0.0, -kappa * x));  // e^{-i kappa x}
    cplx em = std::exp(cplx(0.0, kappa * x));
    Mat2 osc1 = ep * Mat2::p_plus() + em * Mat2::p_minus();
    Mat2 osc2 = cplx(0.0, 1.0) * ep * Mat2::p_plus() - em * Mat2::p_minus();
    Mat2 asy = 0.5 * (osc1 * rm.S) - (0.5 / (kappa * cplx(1.0, 1.0))) * (osc2 * rm.C);

    // e^{-kappa x} Phi = e^{log_scale - kappa x} * stored Phi
    Mat2 lhs = std::exp(st.log_scale - kappa * x) * st.Phi;
    return (lhs - asy).fnorm() / asy.fnorm();
}

}  // namespace tw
