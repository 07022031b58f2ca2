// Acceptance suite: every quantitative claim the library is sold on, one
// pass/fail line each. Exits nonzero if anything fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "tw/eigensolver.hpp"
#include "tw/oracles.hpp"
#include "tw/spectral.hpp"
#include "tw/weyl.hpp"

using namespace tw;

namespace {

int g_failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

void report(int id, const char* what, bool pass, double worst, double tol, double secs) {
    std::printf("[%s] criterion %2d: %-58s worst=%.3e tol=%.3e (%.1fs)\n", pass ? "PASS" : "FAIL",
                id, what, worst, tol, secs);
    if (!pass) ++g_failures;
}

Problem make_problem(Potential pot, BoundaryParam alpha) {
    return Problem{std::move(pot), alpha, std::nullopt, {}, {}};
}

std::vector<BoundaryParam> alpha_set() {
    return {BoundaryParam::finite(0.0), BoundaryParam::finite(1.0),
            BoundaryParam::finite(cplx(1.0, 1.0)), BoundaryParam::finite(cplx(0.0, 3.0)),
            BoundaryParam::inf()};
}

std::vector<double> geometric(double lo, double hi, int n) {
    std::vector<double> out;
    for (int j = 0; j < n; ++j)
        out.push_back(lo * std::pow(hi / lo, static_cast<double>(j) / (n - 1)));
    return out;
}

cplx fq_k(cplx lambda) {
    cplx k = std::sqrt(lambda);
    return k.real() < 0.0 ? -k : k;
}

// ---------------------------------------------------------------------------

void criterion1() {
    Timer t;
    double worst = 0.0;
    bool pass = true;
    for (const BoundaryParam& alpha : alpha_set()) {
        Problem p = make_problem(Potential::zero(), alpha);
        for (double r : geometric(0.5, 50.0, 20)) {
            cplx lam = r * std::exp(cplx(0.0, M_PI / 3.0));
            MFunctionValue mv = m_limit(p, lam, 1e-6);
            double diff = (mv.M - free_m(alpha, lam)).fnorm();
            double allowed = std::max(1e-6, mv.disk_radius);
            worst = std::max(worst, diff / allowed);
            if (diff > allowed) pass = false;
        }
    }
    report(1, "free M-function on the arg = pi/3 ray vs closed form", pass, worst, 1.0, t.seconds());
}

void criterion2() {
    Timer t;
    std::vector<double> eps = default_eps_schedule();
    double worst_nu = 0.0, worst_psi = 0.0;
    bool pass = true;
    for (const BoundaryParam& alpha : alpha_set()) {
        Problem p = make_problem(Potential::zero(), alpha);
        bool robin_one = !alpha.infinite && alpha.alpha == cplx(1.0);
        for (double lam : geometric(0.25, 25.0, 12)) {
            // atom exclusion: the extrapolated Poisson residual of the mass-2
            // point at 1 scales like mass * eps1 eps2 eps3 / d^4, so the
            // window must reach |lam - 1| >= 0.2 for the 1e-3 phase target
            if (robin_one && lam > 0.8 && lam < 1.25) continue;
            DensityMatrix dm = stieltjes_density(p, lam, eps);
            PairDecomposition pd = decompose_pair(dm.density);
            FreePair ref = free_pair(alpha, lam);
            double dnu = std::abs(pd.nu_density - ref.sample.nu_density) /
                         (1.0 + ref.sample.nu_density);
            worst_nu = std::max(worst_nu, dnu);
            if (dnu > 1e-4) pass = false;
            if (pd.psi_defined) {
                double dpsi = std::abs(pd.psi - ref.sample.psi);
                worst_psi = std::max(worst_psi, dpsi);
                if (dpsi > 1e-3) pass = false;
            }
        }
    }
    // spot value
    Problem spot = make_problem(Potential::zero(), BoundaryParam::finite(cplx(1.0, 1.0)));
    PairDecomposition pd = decompose_pair(stieltjes_density(spot, 4.0, eps).density);
    if (std::abs(pd.nu_density - 3.0 / (2.0 * M_PI)) > 1e-4 * (1.0 + 3.0 / (2.0 * M_PI)))
        pass = false;
    if (std::abs(pd.psi - cplx(0.0, -1.0)) > 1e-3) pass = false;
    report(2, "free spectral pair vs closed form (incl. spot 1+i @ 4)", pass,
           std::max(worst_nu * 10.0, worst_psi), 1e-3, t.seconds());
}

void criterion3() {
    Timer t;
    Problem p = make_problem(Potential::zero(), BoundaryParam::finite(1.0));
    bool pass = true;
    double worst = 0.0;

    auto da = detect_atom(p, 1.0, default_delta_schedule());
    if (!da) {
        report(3, "embedded atom at alpha = 1", false, 1.0, 1e-3, t.seconds());
        return;
    }
    worst = std::max(worst, std::abs(da->nu_mass - 2.0));
    worst = std::max(worst, std::abs(da->psi_value + 1.0));

    Atom ea = pair_at_eigenvalue(distinguished_solution(p, 1.0));
    worst = std::max(worst, std::abs(ea.nu_mass - 2.0));
    worst = std::max(worst, std::abs(ea.psi_value + 1.0));

    worst = std::max(worst, std::abs(ea.nu_mass - da->nu_mass));
    worst = std::max(worst, std::abs(ea.psi_value - da->psi_value));
    pass = worst <= 1e-3;
    report(3, "atom via boundary values and via the eigenfunction", pass, worst, 1e-3, t.seconds());
}

void criterion4() {
    Timer t;
    std::vector<double> eps = default_eps_schedule();
    std::vector<Potential> pots = {Potential::zero(), Potential::step({{0.0, 1.0, 1.0}}),
                                   Potential::exp_decay(1.0, 1.0)};
    std::vector<BoundaryParam> alphas = {BoundaryParam::finite(0.0), BoundaryParam::finite(1.0),
                                         BoundaryParam::inf()};
    double worst = 0.0;
    for (const Potential& q : pots) {
        for (const BoundaryParam& alpha : alphas) {
            Problem p = make_problem(q, alpha);
            // atom exclusion windows from the eigenvalue scan
            std::vector<std::pair<double, double>> windows;
            try {
                for (double s : find_singular_values(p, 0.05, 3.0))
                    windows.emplace_back(s - 0.3, s + 0.3);
            } catch (const Error&) {
            }
            std::vector<double> grid;
            for (double lam : geometric(0.5, 30.0, 10)) {
                bool excluded = false;
                for (auto [wl, wh] : windows) excluded |= (lam > wl && lam < wh);
                if (!excluded) grid.push_back(lam);
            }
            worst = std::max(worst, selfadjoint_check(p, grid, eps));
        }
    }
    report(4, "self-adjoint relation sigma' = (1+psi) nu' across pipelines", worst <= 1e-3, worst,
           1e-3, t.seconds());
}

void criterion5() {
    Timer t;
    std::vector<double> eps = default_eps_schedule();
    double worst_phase = 0.0, worst_gap = 0.0;
    for (double omega : {0.5, 2.0}) {
        Problem p = make_problem(Potential::exp_decay(1.0, 1.0).with_offset(cplx(0.0, omega)),
                                 BoundaryParam::finite(0.0));
        for (int j = 0; j < 10; ++j) {
            double s = (omega + 0.5) + (20.0 - omega - 0.5) * j / 9.0;
            PairDecomposition pd = decompose_pair(stieltjes_density(p, s, eps).density);
            if (!pd.psi_defined) {
                worst_phase = 1.0;
                continue;
            }
            worst_phase = std::max(worst_phase, std::abs(pd.psi.imag() - omega / s));
        }
        for (double s : {0.3 * (omega - 0.1), 0.7 * (omega - 0.1), 0.95 * (omega - 0.1)}) {
            DensityMatrix dm = stieltjes_density(p, s, eps);
            worst_gap = std::max(worst_gap, 0.5 * dm.density.trace().real());
        }
    }
    bool pass = worst_phase <= 2e-3 && worst_gap <= 1e-4;
    report(5, "imaginary shift: Im psi = omega/s, no mass below |omega|", pass,
           std::max(worst_phase, worst_gap * 20.0), 2e-3, t.seconds());
}

void criterion6() {
    Timer t;
    bool pass = true;
    double worst = 0.0;

    Problem pd = make_problem(Potential::zero(), BoundaryParam::inf());
    double r1 = 0.5 * distribution_ratio(pd, 1000.0, +1).trace().real();
    double d1 = std::abs(r1 - 1.0 / (3.0 * M_PI)) * 3.0 * M_PI;
    worst = std::max(worst, d1 / 0.01);
    if (d1 > 0.01) pass = false;

    Problem p2i = make_problem(Potential::zero(), BoundaryParam::finite(cplx(0.0, 2.0)));
    double r2 = 0.5 * distribution_ratio(p2i, 1e4, +1).trace().real();
    double d2 = std::abs(r2 - 5.0 / M_PI) * M_PI / 5.0;
    worst = std::max(worst, d2 / 0.02);
    if (d2 > 0.02) pass = false;

    Problem pcx = make_problem(Potential::exp_decay(cplx(1.0, 1.0), 1.0), BoundaryParam::finite(0.0));
    double r3 = 0.5 * distribution_ratio(pcx, 1e4, +1).trace().real();
    double d3 = std::abs(r3 - 1.0 / M_PI) * M_PI;
    worst = std::max(worst, d3 / 0.05);
    if (d3 > 0.05) pass = false;

    report(6, "growth ratios of the integrated measure (r up to 1e4)", pass, worst, 1.0,
           t.seconds());
}

void criterion7() {
    Timer t;
    BoundaryParam alpha = BoundaryParam::finite(cplx(1.0, 1.0));
    Problem p = make_problem(Potential::zero(), alpha);
    p.ode_step = {1e-3, 0.01};  // the 1/k^3 remainder needs a tight phase error

    std::vector<double> scaled;
    Mat2 recovered_const;
    for (double k : {10.0, 20.0, 40.0}) {
        cplx lam(0.0, k * k);
        MFunctionValue mv = m_limit(p, lam, 1e-9);
        Mat2 diff = mv.M - m_asymptotic(alpha, lam);
        scaled.push_back(diff.fnorm() * k * k * k);
        if (k == 40.0) {
            cplx kk = fq_k(lam);
            double w = 1.0 + std::norm(alpha.alpha);
            Mat2 ipm = cplx(0.0, 1.0) * Mat2::p_plus() - Mat2::p_minus();
            Mat2 eA = Mat2::sigma_x() * Mat2::diag(std::conj(alpha.alpha), alpha.alpha);
            recovered_const = mv.M - (w / kk) * ipm - (w / (kk * kk)) * (ipm * eA * ipm);
        }
    }
    double q1 = scaled[1] / scaled[0], q2 = scaled[2] / scaled[1];
    bool pass = q1 >= 0.5 && q1 <= 2.0 && q2 >= 0.5 && q2 <= 2.0;
    Mat2 eA{0.0, cplx(1.0, 1.0), cplx(1.0, -1.0), 0.0};
    double dc = (recovered_const - eA).max_abs();
    if (dc > 1e-3) pass = false;
    report(7, "M asymptotics: k^3-scaled remainder flat, const term = eA", pass,
           std::max({std::abs(std::log(q1)), std::abs(std::log(q2)), dc * 100.0}), 1.0,
           t.seconds());
}

// criterion 8 helpers -------------------------------------------------------

double wronskian_defect(const Problem& p, cplx lambda, double x) {
    FundamentalState a = propagate(p, std::conj(lambda), x);
    FundamentalState b = propagate(p, lambda, x);
    double scale = std::exp(a.log_scale + b.log_scale);
    Mat2 sx = Mat2::sigma_x();
    Mat2 w1 = a.Phi.adjoint() * (sx * b.dTheta) - a.dPhi.adjoint() * (sx * b.Theta);
    Mat2 w0 = a.Phi.adjoint() * (sx * b.dPhi) - a.dPhi.adjoint() * (sx * b.Phi);
    Mat2 x4 = b.dTheta * a.Phi.adjoint() - b.dPhi * a.Theta.adjoint();
    return std::max({(scale * w1 - Mat2::identity()).fnorm(), (scale * w0).fnorm(),
                     (scale * x4 - sx).fnorm()});
}

cplx smooth_bump(double y) {  // supported on (1, 2), C^infinity
    double u = 2.0 * (y - 1.5);
    if (std::abs(u) >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - u * u));
}

double resolvent_residual() {
    Problem p = make_problem(Potential::exp_decay(0.5, 1.0), BoundaryParam::finite(0.3));
    cplx lam(1.0, 0.8);
    Mat2 m = m_limit(p, lam, 1e-10).M;

    struct PointData {
        Mat2 phi, chi;      // at lambda
        Mat2 phi_c, chi_c;  // at conj lambda
    };
    auto eval_point = [&](double x) {
        FundamentalState s1 = propagate(p, lam, x);
        FundamentalState s2 = propagate(p, std::conj(lam), x);
        double f1 = std::exp(s1.log_scale), f2 = std::exp(s2.log_scale);
        PointData d;
        d.phi = f1 * s1.Phi;
        d.chi = f1 * (s1.Theta - s1.Phi * m);
        d.phi_c = f2 * s2.Phi;
        d.chi_c = f2 * (s2.Theta - s2.Phi * m.adjoint());
        return d;
    };
    auto kernel = [&](const PointData& dx, const PointData& dy, bool x_ge_y) {
        return x_ge_y ? -(dx.chi * dy.phi_c.adjoint()) : -(dx.phi * dy.chi_c.adjoint());
    };

    // bump support [1, 2] discretized so that every evaluation point and the
    // kernel's diagonal kink land on grid nodes; Simpson runs per smooth piece
    const int n = 1000;
    const double hy = 1.0 / n;
    std::vector<double> ys(n + 1);
    std::vector<PointData> yd(n + 1);
    std::vector<cplx> f1(n + 1), f2(n + 1);
    for (int j = 0; j <= n; ++j) {
        ys[j] = 1.0 + j * hy;
        yd[j] = eval_point(ys[j]);
        cplx b = smooth_bump(ys[j]);
        f1[j] = b;
        f2[j] = 0.5 * b;
    }
    auto simpson_piece = [&](const PointData& dx, int jlo, int jhi, bool x_ge_y, cplx& g1,
                             cplx& g2) {
        if (jhi - jlo < 2) return;
        for (int j = jlo; j <= jhi; ++j) {
            double w = (j == jlo || j == jhi) ? 1.0 : ((j - jlo) % 2 ? 4.0 : 2.0);
            w *= hy / 3.0;
            Mat2 r = kernel(dx, yd[j], x_ge_y);
            g1 += w * (r.a11 * f1[j] + r.a12 * f2[j]);
            g2 += w * (r.a21 * f1[j] + r.a22 * f2[j]);
        }
    };
    auto g_at = [&](double x) {
        PointData dx = eval_point(x);
        cplx g1 = 0.0, g2 = 0.0;
        if (x <= 1.0) {
            simpson_piece(dx, 0, n, false, g1, g2);
        } else if (x >= 2.0) {
            simpson_piece(dx, 0, n, true, g1, g2);
        } else {
            int jx = static_cast<int>(std::lround((x - 1.0) / hy));
            simpson_piece(dx, 0, jx, true, g1, g2);
            simpson_piece(dx, jx, n, false, g1, g2);
        }
        return std::pair<cplx, cplx>(g1, g2);
    };

    double worst = 0.0;
    const double hs = 2e-3;  // stencil step: two grid cells, parity-preserving
    for (double x : {0.4, 0.9, 1.3, 1.52, 1.9, 2.4}) {
        cplx g[5][2];
        for (int o = -2; o <= 2; ++o) {
            auto [g1, g2] = g_at(x + o * hs);
            g[o + 2][0] = g1;
            g[o + 2][1] = g2;
        }
        cplx dd1 = (-g[0][0] + 16.0 * g[1][0] - 30.0 * g[2][0] + 16.0 * g[3][0] - g[4][0]) /
                   (12.0 * hs * hs);
        cplx dd2 = (-g[0][1] + 16.0 * g[1][1] - 30.0 * g[2][1] + 16.0 * g[3][1] - g[4][1]) /
                   (12.0 * hs * hs);
        // -sigma_x G'' + Q G - lambda G = F
        cplx q = p.potential.value_at(x);
        cplx r1 = -dd2 + q * g[2][1] - lam * g[2][0];
        cplx r2 = -dd1 + std::conj(q) * g[2][0] - lam * g[2][1];
        cplx fb = smooth_bump(x);
        worst = std::max(worst, std::abs(r1 - fb));
        worst = std::max(worst, std::abs(r2 - 0.5 * fb));
    }
    return worst;
}

void criterion8() {
    Timer t;
    bool pass = true;
    double worst_failed = 0.0;
    std::string failed;
    const char* section = "";
    auto note = [&](bool ok, double v) {
        if (!ok) {
            pass = false;
            failed += std::string(failed.empty() ? "" : ",") + section;
            worst_failed = std::max(worst_failed, v);
        }
    };

    // Wronskian / structural identities
    {
        section = "wronskian";
        Problem p = make_problem(Potential::exp_decay(cplx(0.8, 0.5), 1.0),
                                 BoundaryParam::finite(cplx(0.4, -0.3)));
        double d = 0.0;
        for (int i = 0; i < 20; ++i) {
            cplx lam(-2.5 + 0.31 * i, 0.4 + 0.07 * i);
            d = std::max(d, wronskian_defect(p, lam, 0.4 + 0.11 * i));
        }
        note(d <= 1e-8, d * 1e5);
    }
    // Herglotz, conjugate and block symmetries within certificates
    {
        section = "herglotz/symmetries";
        Problem p = make_problem(Potential::exp_decay(cplx(1.0, 1.0), 1.0),
                                 BoundaryParam::finite(0.0));
        Mat2 re_mi = herm_real(m_limit(p, cplx(0.0, 1.0), 1e-8).M);
        Mat2 sx = Mat2::sigma_x(), sz = Mat2::sigma_z();
        for (cplx lam : {cplx(0.7, 0.9), cplx(-1.4, 0.5), cplx(3.0, 1.8), cplx(5.0, 0.02)}) {
            MFunctionValue mv = m_limit(p, lam, 1e-8);
            note(herm_eigs(herm_imag(mv.M))[0] > 0.0, 0.0);
            MFunctionValue mc = m_limit(p, std::conj(lam), 1e-8);
            double dc = (mc.M - mv.M.adjoint()).fnorm();
            note(dc <= 2.0 * (mv.disk_radius + mc.disk_radius) + 1e-8, dc);
            Mat2 k1 = mv.M - re_mi;
            Mat2 k2 = m_limit(p, -lam, 1e-8).M - re_mi;
            double ds = std::max((k1 - sx * k1.transp() * sx).fnorm(),
                                 (k1 + sz * k2 * sz).fnorm());
            note(ds <= 1e-6, ds);
        }
    }
    // parity and the phase-disk constraint
    {
        section = "parity/disk";
        Problem p = make_problem(Potential::exp_decay(cplx(0.5, 0.5), 1.0),
                                 BoundaryParam::finite(cplx(0.3, -0.4)));
        std::vector<double> eps = default_eps_schedule();
        for (double s : {1.2, 2.8}) {
            DensityMatrix dp = stieltjes_density(p, s, eps);
            DensityMatrix dn = stieltjes_density(p, -s, eps);
            PairDecomposition pp = decompose_pair(dp.density);
            PairDecomposition pn = decompose_pair(dn.density);
            note(std::abs(pp.nu_density - pn.nu_density) <= 2.0 * (dp.err_est + dn.err_est) + 1e-5,
                 std::abs(pp.nu_density - pn.nu_density));
            if (pp.psi_defined && pn.psi_defined)
                note(std::abs(pp.psi + pn.psi) <= 2e-3, std::abs(pp.psi + pn.psi));
            if (pp.psi_defined) note(std::abs(pp.psi) <= 1.0 + dp.err_est + 1e-3, std::abs(pp.psi));
        }
    }
    // disk radius monotone in b
    {
        section = "disk-monotone";
        Problem p = make_problem(Potential::exp_decay(0.7, 1.0), BoundaryParam::finite(0.2));
        double prev = std::numeric_limits<double>::infinity();
        for (double b : {3.0, 4.5, 6.0, 7.5}) {  // below the certificate's roundoff wall
            double r = disk_radius(p, cplx(0.8, 0.9), b);
            note(r <= prev + 1e-12, r);
            prev = r;
        }
    }
    // adjoint pipeline
    {
        section = "adjoint";
        Problem p = make_problem(Potential::exp_decay(cplx(1.0, 1.0), 1.0),
                                 BoundaryParam::finite(cplx(0.5, 0.7)));
        Problem pc = p.conjugated();
        std::vector<double> eps = default_eps_schedule();
        for (double s : {1.5, 4.0}) {
            PairDecomposition a = decompose_pair(stieltjes_density(p, s, eps).density);
            PairDecomposition b = decompose_pair(stieltjes_density(pc, s, eps).density);
            note(std::abs(a.nu_density - b.nu_density) <= 2e-4 * (1.0 + a.nu_density),
                 std::abs(a.nu_density - b.nu_density));
            note(std::abs(std::conj(a.psi) - b.psi) <= 2e-3, std::abs(std::conj(a.psi) - b.psi));
        }
    }
    // large-kappa deviation halves when kappa doubles
    {
        section = "kappa-halving";
        Problem p = make_problem(Potential::exp_decay(1.0, 1.0), BoundaryParam::finite(0.0));
        double d25 = large_kappa_deviation(p, 25.0, 1.0);
        double d50 = large_kappa_deviation(p, 50.0, 1.0);
        double d100 = large_kappa_deviation(p, 100.0, 1.0);
        note(d25 / d50 >= 1.5 && d25 / d50 <= 2.5, d25 / d50);
        note(d50 / d100 >= 1.5 && d50 / d100 <= 2.5, d50 / d100);
    }
    // resolvent kernel residual
    {
        section = "resolvent";
        double r = resolvent_residual();
        note(r <= 1e-5, r);
    }
    if (!failed.empty()) std::printf("    criterion 8 failing sections: %s\n", failed.c_str());
    report(8, "invariant suites (identities, symmetries, decay, resolvent)", pass, worst_failed,
           1.0, t.seconds());
}

void criterion9() {
    Timer t;
    double worst = 0.0;
    bool pass = true;
    double norm0 = Mat2::identity().fnorm();
    for (cplx c : {cplx(0.35, 0.35), cplx(0.6, -0.8)}) {  // |c| = 0.5 and 1
        Problem p = make_problem(Potential::constant(c), BoundaryParam::finite(0.0));
        for (cplx k : {cplx(5.0, 5.0), cplx(10.0, 2.0)}) {
            cplx lam = k * k;
            for (double x : {0.5, 1.0, 2.0}) {
                // fixed-value solution: F(0) = I, F'(0) = 0
                Frame fv{Mat2::identity(), Mat2::zero()};
                std::span<Frame> one(&fv, 1);
                double ls = 0.0;
                detail::advance_frames(p.potential, lam, one, 0.0, x, p.ode_step.step_for(lam),
                                       [&](double, double) { ls += detail::renorm_frames(one); });
                Mat2 f0 = std::cos(k * x) * Mat2::p_plus() + std::cosh(k * x) * Mat2::p_minus();
                double measured = (std::exp(ls) * fv.y - f0).fnorm();
                double bound =
                    gronwall_bound(GronwallCase::FixedValue, k, norm0, std::abs(c) * x, x).bound;
                worst = std::max(worst, measured - bound);
                if (measured > bound + 1e-9) pass = false;

                // fixed-derivative solution: F(0) = 0, F'(0) = I
                Frame fd{Mat2::zero(), Mat2::identity()};
                std::span<Frame> one2(&fd, 1);
                ls = 0.0;
                detail::advance_frames(p.potential, lam, one2, 0.0, x, p.ode_step.step_for(lam),
                                       [&](double, double) { ls += detail::renorm_frames(one2); });
                Mat2 g0 = (std::sin(k * x) / k) * Mat2::p_plus() +
                          (std::sinh(k * x) / k) * Mat2::p_minus();
                measured = (std::exp(ls) * fd.y - g0).fnorm();
                bound = gronwall_bound(GronwallCase::FixedDerivative, k, norm0, std::abs(c) * x, x)
                            .bound;
                worst = std::max(worst, measured - bound);
                if (measured > bound + 1e-9) pass = false;
            }
        }
    }
    report(9, "a-priori deviation bounds contain the measured deviation", pass, worst, 1e-9,
           t.seconds());
}

void distinguishability() {
    Timer t;
    bool pass = true;
    double worst = 0.0;
    for (double a : {1.0, 1.1}) {
        Problem p = make_problem(Potential::zero(), BoundaryParam::finite(a));
        std::vector<double> svs = find_singular_values(p, 0.5, 2.0);
        double want_loc = a * a, want_mass = a * (1.0 + a * a);
        if (svs.size() != 1) {
            pass = false;
            continue;
        }
        auto atom = detect_atom(p, svs[0], default_delta_schedule());
        if (!atom) {
            pass = false;
            continue;
        }
        worst = std::max(worst, std::abs(svs[0] - want_loc));
        worst = std::max(worst, std::abs(atom->nu_mass - want_mass));
    }
    if (worst > 1e-3) pass = false;
    report(10, "distinguishability proxy: alpha = 1 vs 1.1 atoms", pass, worst, 1e-3, t.seconds());
}

}  // namespace

int main() {
    Timer total;
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    distinguishability();
    std::printf("%s: %d failure(s), %.1fs total\n", g_failures ? "FAILURE" : "SUCCESS", g_failures,
                total.seconds());
    return g_failures ? 1 : 0;
}
