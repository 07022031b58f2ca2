#include "tw/eigensolver.hpp"

#include <algorithm>
#include <cmath>

namespace tw {

namespace {

// realified antilinear equation: (u, v)'' = K(x) (u, v),
// K = [[Re q - lambda, -Im q], [Im q, Re q + lambda]]
Mat2 realified_g(const Potential& pot, double x, double lambda) {
    cplx q = pot.value_at(x);
    return {q.real() - lambda, -q.imag(), q.imag(), q.real() + lambda};
}

// columns are the shooting directions for initial data e(0) = 1 and e(0) = i
// (Dirichlet: e'(0) = 1 and e'(0) = i)
Frame initial_shoot_frame(const BoundaryParam& alpha) {
    Frame f;
    if (alpha.infinite) {
        f.y = Mat2::zero();
        f.dy = Mat2::identity();
        return f;
    }
    double ar = alpha.alpha.real(), ai = alpha.alpha.imag();
    f.y = Mat2::identity();
    f.dy = {-ar, ai, -ai, -ar};
    return f;
}

struct Vec4 {
    double u, v, du, dv;
    double norm() const { return std::sqrt(u * u + v * v + du * du + dv * dv); }
};

Vec4 frame_col(const Frame& f, int j) {
    return {(j == 0 ? f.y.a11 : f.y.a12).real(), (j == 0 ? f.y.a21 : f.y.a22).real(),
            (j == 0 ? f.dy.a11 : f.dy.a12).real(), (j == 0 ? f.dy.a21 : f.dy.a22).real()};
}

// eigen-decomposition of a symmetric 3x3 by cyclic Jacobi
struct Sym3Eig {
    std::array<double, 3> values{};
    std::array<std::array<double, 3>, 3> vectors{};  // columns
};

Sym3Eig jacobi3(std::array<std::array<double, 3>, 3> a) {
    Sym3Eig out;
    std::array<std::array<double, 3>, 3> v{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    for (int sweep = 0; sweep < 32; ++sweep) {
        double off = std::abs(a[0][1]) + std::abs(a[0][2]) + std::abs(a[1][2]);
        double diag = std::abs(a[0][0]) + std::abs(a[1][1]) + std::abs(a[2][2]);
        if (off <= 1e-16 * (diag + 1e-300)) break;
        for (int p = 0; p < 3; ++p)
            for (int q = p + 1; q < 3; ++q) {
                if (a[p][q] == 0.0) continue;
                double theta = 0.5 * (a[q][q] - a[p][p]) / a[p][q];
                double t = std::copysign(1.0, theta) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
                for (int k = 0; k < 3; ++k) {
                    double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (int k = 0; k < 3; ++k) {
                    double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for (int k = 0; k < 3; ++k) {
                    double vkp = v[k][p], vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
    }
    std::array<int, 3> idx{0, 1, 2};
    std::array<double, 3> d{a[0][0], a[1][1], a[2][2]};
    std::sort(idx.begin(), idx.end(), [&](int i, int j) { return d[i] < d[j]; });
    for (int k = 0; k < 3; ++k) {
        out.values[static_cast<size_t>(k)] = d[static_cast<size_t>(idx[static_cast<size_t>(k)])];
        for (int r = 0; r < 3; ++r)
            out.vectors[static_cast<size_t>(r)][static_cast<size_t>(k)] =
                v[static_cast<size_t>(r)][static_cast<size_t>(idx[static_cast<size_t>(k)])];
    }
    return out;
}

struct ShootGeometry {
    double match = 0.0;   // forward/backward matching point
    double b_far = 0.0;   // backward start (beyond the potential support)
    double h = 1e-2;
};

ShootGeometry shoot_geometry(const Problem& p, double lambda_hint, const ScanOptions& opts) {
    ShootGeometry g;
    double rt = std::sqrt(std::max(lambda_hint, 0.25));
    double support = p.potential.effective_support(1e-12);
    if (!std::isfinite(support)) support = 0.0;
    // the forward sweep loses the decaying component like e^{-2 sqrt(lambda) x},
    // so the matching point must stay shallow; the backward sweep is stable
    // through the potential region and only its seed needs a quiet tail
    g.match = std::max(0.5, 4.0 / rt);
    g.b_far = std::max(support + 6.0 / rt, g.match + 30.0 / rt);
    if (opts.b_work > 0.0) g.b_far = opts.b_work;
    g.h = std::min(StepPolicy{}.h_max, 0.1 / (1.0 + rt));
    return g;
}

struct Mismatch {
    double sigma_min = 1.0;
    double sigma_second = 1.0;
    // forward combination and backward coefficient, common true scale
    double z1 = 1.0, z2 = 0.0, c_back = 0.0;
};

struct ShootContext {
    const Problem& p;
    ShootGeometry geo;
};

// half-line: match the two admissible forward directions against the
// exponentially decaying backward solution at the matching point
Mismatch halfline_mismatch(const ShootContext& ctx, double lambda) {
    const Potential& pot = ctx.p.potential;
    auto g = [&](double x) { return realified_g(pot, x, lambda); };

    Frame fwd = initial_shoot_frame(ctx.p.alpha);
    std::span<Frame> fs(&fwd, 1);
    double s_f = 0.0;
    detail::advance_frames_g(g, pot.breakpoints(), fs, 0.0, ctx.geo.match, ctx.geo.h,
                             [&](double, double) { s_f += detail::renorm_frames(fs); });

    double rt = std::sqrt(lambda);
    Frame bwd{Mat2::zero(), Mat2::zero()};
    bwd.y.a21 = 1.0;      // v(b) = 1
    bwd.dy.a21 = -rt;     // v'(b) = -sqrt(lambda): the decaying branch
    std::span<Frame> bs(&bwd, 1);
    double s_b = 0.0;
    detail::advance_frames_g(g, pot.breakpoints(), bs, ctx.geo.b_far, ctx.geo.match, ctx.geo.h,
                             [&](double, double) { s_b += detail::renorm_frames(bs); });

    Vec4 c1 = frame_col(fwd, 0), c2 = frame_col(fwd, 1), c3 = frame_col(bwd, 0);
    double n1 = c1.norm(), n2 = c2.norm(), n3 = c3.norm();
    Mismatch out;
    if (!(n1 > 0.0) || !(n2 > 0.0) || !(n3 > 0.0)) return out;
    std::array<Vec4, 3> cols = {c1, c2, c3};
    std::array<double, 3> nn = {n1, n2, n3};
    std::array<std::array<double, 3>, 3> gram{};
    auto dot = [](const Vec4& a, const Vec4& b) {
        return a.u * b.u + a.v * b.v + a.du * b.du + a.dv * b.dv;
    };
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            gram[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                dot(cols[static_cast<size_t>(i)], cols[static_cast<size_t>(j)]) /
                (nn[static_cast<size_t>(i)] * nn[static_cast<size_t>(j)]);
    // sign convention: the third column enters the matching with a minus
    for (int i = 0; i < 2; ++i) {
        gram[static_cast<size_t>(i)][2] = -gram[static_cast<size_t>(i)][2];
        gram[2][static_cast<size_t>(i)] = -gram[2][static_cast<size_t>(i)];
    }
    Sym3Eig eig = jacobi3(gram);
    out.sigma_min = std::sqrt(std::max(eig.values[0], 0.0));
    out.sigma_second = std::sqrt(std::max(eig.values[1], 0.0));
    // null vector back to un-normalized coefficients; true scales re-attached
    double w1 = eig.vectors[0][0] / n1, w2 = eig.vectors[1][0] / n2, w3 = eig.vectors[2][0] / n3;
    // common scale: forward coefficients carry e^{-s_f}, backward e^{-s_b}
    out.z1 = w1;
    out.z2 = w2;
    out.c_back = w3 * std::exp(s_f - s_b);
    return out;
}

// compact interval: realified right boundary condition applied to the two
// shooting directions
Mismatch compact_mismatch(const ShootContext& ctx, double lambda) {
    const Potential& pot = ctx.p.potential;
    auto g = [&](double x) { return realified_g(pot, x, lambda); };
    Frame fwd = initial_shoot_frame(ctx.p.alpha);
    std::span<Frame> fs(&fwd, 1);
    detail::advance_frames_g(g, pot.breakpoints(), fs, 0.0, pot.domain_length(), ctx.geo.h,
                             [&](double, double) { detail::renorm_frames(fs); });
    const BoundaryParam& beta = *ctx.p.beta;
    Vec4 c1 = frame_col(fwd, 0), c2 = frame_col(fwd, 1);
    auto bc_rows = [&](const Vec4& c, double& r1, double& r2) {
        if (beta.infinite) {
            r1 = c.u;
            r2 = c.v;
        } else {
            double br = beta.alpha.real(), bi = beta.alpha.imag();
            r1 = c.du + br * c.u - bi * c.v;
            r2 = c.dv + bi * c.u + br * c.v;
        }
    };
    double a1, a2, b1, b2;
    bc_rows(c1, a1, a2);
    bc_rows(c2, b1, b2);
    double n1 = c1.norm(), n2 = c2.norm();
    Mismatch out;
    if (!(n1 > 0.0) || !(n2 > 0.0)) return out;
    double scale = std::sqrt(std::max(lambda, 1.0));
    double t11 = (a1 * a1 + a2 * a2) / (n1 * n1 * scale);
    double t12 = (a1 * b1 + a2 * b2) / (n1 * n2 * scale);
    double t22 = (b1 * b1 + b2 * b2) / (n2 * n2 * scale);
    double mid = 0.5 * (t11 + t22);
    double rad = std::sqrt(0.25 * (t11 - t22) * (t11 - t22) + t12 * t12);
    out.sigma_min = std::sqrt(std::max(mid - rad, 0.0));
    out.sigma_second = std::sqrt(std::max(mid + rad, 0.0));
    double m11 = t11 - (mid - rad), m12 = t12;
    double z1, z2;
    if (std::abs(m11) > std::abs(m12)) {
        z1 = -m12;
        z2 = m11;
    } else {
        z1 = t22 - (mid - rad);
        z2 = -m12;
    }
    double zn = std::hypot(z1, z2);
    if (zn > 0.0) {
        z1 /= zn * n1;
        z2 /= zn * n2;
    }
    out.z1 = z1;
    out.z2 = z2;
    return out;
}

Mismatch shoot_mismatch(const ShootContext& ctx, double lambda) {
    return ctx.p.potential.domain_finite() ? compact_mismatch(ctx, lambda)
                                           : halfline_mismatch(ctx, lambda);
}

double golden_refine(const ShootContext& ctx, double lo, double hi, int iters) {
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = shoot_mismatch(ctx, x1).sigma_min;
    double f2 = shoot_mismatch(ctx, x2).sigma_min;
    for (int i = 0; i < iters; ++i) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = shoot_mismatch(ctx, x1).sigma_min;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = shoot_mismatch(ctx, x2).sigma_min;
        }
    }
    return 0.5 * (a + b);
}

void validate_scan_problem(const Problem& p) {
    if (!p.potential.is_scalar())
        throw Error("singular-value scan: scalar potential required");
    if (p.potential.offset() != cplx(0.0))
        throw Error("singular-value scan: potentials with constant offset not supported");
    if (p.potential.domain_finite() && !p.beta)
        throw Error("singular-value scan: finite interval needs a right boundary parameter");
    if (!p.potential.domain_finite() && !std::isfinite(p.potential.effective_support(1e-12)))
        throw Error("singular-value scan: potential needs a decaying tail");
}

constexpr double kAcceptSigma = 1e-5;

}  // namespace

std::vector<double> find_singular_values(const Problem& p, double lo, double hi,
                                         const ScanOptions& opts) {
    if (!(hi > lo) || !(lo > 0.0)) throw Error("find_singular_values: need 0 < lo < hi");
    validate_scan_problem(p);

    ShootContext ctx{p, shoot_geometry(p, hi, opts)};

    std::vector<double> grid;
    for (double l = lo; l <= hi + 1e-12; l += opts.grid_step) grid.push_back(l);
    std::vector<double> sm(grid.size());
    for (size_t i = 0; i < grid.size(); ++i) sm[i] = shoot_mismatch(ctx, grid[i]).sigma_min;

    // refine every local minimum: the dips are narrow V-shapes, so the grid
    // value may sit far above the floor even one step from a root
    std::vector<double> found;
    for (size_t i = 1; i + 1 < grid.size(); ++i) {
        bool local_min = sm[i] <= sm[i - 1] && sm[i] <= sm[i + 1];
        bool dips = sm[i] < std::max(opts.candidate_ratio, 0.9 * std::min(sm[i - 1], sm[i + 1]));
        if (local_min && dips) {
            double root = golden_refine(ctx, grid[i - 1], grid[i + 1], 60);
            Mismatch m = shoot_mismatch(ctx, root);
            if (m.sigma_min < kAcceptSigma) {
                if (m.sigma_second < opts.degenerate_gap * kAcceptSigma) throw Degenerate();
                if (found.empty() || std::abs(found.back() - root) > 1e-7 * (1.0 + root))
                    found.push_back(root);
            }
        }
    }
    return found;
}

DistinguishedSolution distinguished_solution(const Problem& p, double lambda,
                                             const ScanOptions& opts) {
    if (!(lambda > 0.0)) throw Error("distinguished_solution: lambda must be positive");
    validate_scan_problem(p);
    ShootContext ctx{p, shoot_geometry(p, lambda, opts)};

    Mismatch m = shoot_mismatch(ctx, lambda);
    if (!(m.sigma_min < kAcceptSigma)) throw NotAnEigenvalue();
    if (m.sigma_second < opts.degenerate_gap * kAcceptSigma) throw Degenerate();

    const Potential& pot = p.potential;
    auto g = [&](double x) { return realified_g(pot, x, lambda); };
    DistinguishedSolution d;
    d.lambda = lambda;

    // forward piece, combined with the null coefficients
    {
        Frame f = initial_shoot_frame(p.alpha);
        std::span<Frame> one(&f, 1);
        double log_scale = 0.0;
        auto push = [&](double x) {
            double u = m.z1 * f.y.a11.real() + m.z2 * f.y.a12.real();
            double v = m.z1 * f.y.a21.real() + m.z2 * f.y.a22.real();
            d.xs.push_back(x);
            d.values.push_back(std::exp(log_scale) * cplx(u, v));
        };
        push(0.0);
        double x_end = pot.domain_finite() ? pot.domain_length() : ctx.geo.match;
        detail::advance_frames_g(g, pot.breakpoints(), one, 0.0, x_end, ctx.geo.h,
                                 [&](double, double xb) {
                                     log_scale += detail::renorm_frames(one);
                                     push(xb);
                                 });
    }

    // backward piece on the half-line, stitched with the matching coefficient
    double tail_stub = 0.0;
    if (!pot.domain_finite()) {
        Frame f{Mat2::zero(), Mat2::zero()};
        f.y.a21 = 1.0;
        f.dy.a21 = -std::sqrt(lambda);
        std::span<Frame> one(&f, 1);
        double log_scale = 0.0;
        std::vector<double> bx;
        std::vector<cplx> bv;
        bx.push_back(ctx.geo.b_far);
        bv.push_back(cplx(0.0, 1.0));
        detail::advance_frames_g(g, pot.breakpoints(), one, ctx.geo.b_far, ctx.geo.match,
                                 ctx.geo.h, [&](double, double xb) {
                                     log_scale += detail::renorm_frames(one);
                                     bx.push_back(xb);
                                     bv.push_back(std::exp(log_scale) *
                                                  cplx(f.y.a11.real(), f.y.a21.real()));
                                 });
        // scale so the backward piece continues the forward one at the match
        // (antilinearity only allows a real factor)
        cplx e_match_fwd = d.values.back();
        cplx e_match_bwd = bv.back();
        double t = (e_match_fwd.real() * e_match_bwd.real() +
                    e_match_fwd.imag() * e_match_bwd.imag()) /
                   std::max(std::norm(e_match_bwd), 1e-300);
        for (size_t i = bx.size(); i-- > 0;) {
            if (bx[i] <= ctx.geo.match) continue;
            d.xs.push_back(bx[i]);
            d.values.push_back(t * bv[i]);
        }
        // order backward samples by increasing x
        std::vector<size_t> order(d.xs.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return d.xs[a] < d.xs[b]; });
        std::vector<double> xs2(d.xs.size());
        std::vector<cplx> vs2(d.xs.size());
        for (size_t i = 0; i < order.size(); ++i) {
            xs2[i] = d.xs[order[i]];
            vs2[i] = d.values[order[i]];
        }
        d.xs = std::move(xs2);
        d.values = std::move(vs2);
        tail_stub = std::norm(d.values.back()) / (2.0 * std::sqrt(lambda));
    }

    // L2 normalization: pairwise Simpson plus the analytic tail stub
    // (non-uniform node pairs fall back to the trapezoid value)
    auto trap_piece_of = [&](size_t i) {
        return 0.5 * (d.xs[i] - d.xs[i - 1]) * (std::norm(d.values[i]) + std::norm(d.values[i - 1]));
    };
    auto quad = [&](bool simpson) {
        double acc = 0.0;
        size_t j = 2;
        for (; j < d.xs.size(); j += 2) {
            double h1 = d.xs[j - 1] - d.xs[j - 2], h2 = d.xs[j] - d.xs[j - 1];
            if (simpson && std::abs(h1 - h2) < 1e-12 * h1)
                acc += h1 / 3.0 * (std::norm(d.values[j - 2]) + 4.0 * std::norm(d.values[j - 1]) +
                                   std::norm(d.values[j]));
            else
                acc += trap_piece_of(j - 1) + trap_piece_of(j);
        }
        if (j - 1 < d.xs.size()) acc += trap_piece_of(j - 1);
        return acc;
    };
    double nrm2 = quad(true);
    double trap_raw = quad(false);
    double nrm = std::sqrt(nrm2 + tail_stub);
    if (!(nrm > 0.0)) throw NotAnEigenvalue("shooting produced the zero solution");
    for (cplx& v : d.values) v /= nrm;
    double z1 = m.z1 / nrm, z2 = m.z2 / nrm;

    // decay acceptance: tail L2 norm below accept_ratio of the head's
    if (!pot.domain_finite()) {
        double half = 0.5 * d.xs.back();
        double head = 0.0, tail = tail_stub / (nrm * nrm);
        for (size_t i = 1; i < d.xs.size(); ++i) {
            double w = 0.5 * (d.xs[i] - d.xs[i - 1]) *
                       (std::norm(d.values[i]) + std::norm(d.values[i - 1]));
            (d.xs[i] <= half ? head : tail) += w;
        }
        if (!(std::sqrt(tail) <= opts.accept_ratio * std::sqrt(head)))
            throw NotAnEigenvalue("solution does not decay");
    }

    // Simpson-vs-trapezoid spread gauges the quadrature part of the norm defect
    d.norm_defect = std::abs(trap_raw - nrm2) / (nrm * nrm) + 1e-2 * tail_stub / (nrm * nrm) + 1e-12;

    // boundary functional and the sign convention
    cplx e0, de0;
    if (p.alpha.infinite) {
        e0 = 0.0;
        de0 = cplx(z1, z2);
        d.ell = de0;
    } else {
        e0 = cplx(z1, z2);
        de0 = -p.alpha.alpha * e0;
        d.ell = (std::conj(p.alpha.alpha) * de0 - e0) / std::sqrt(1.0 + std::norm(p.alpha.alpha));
    }
    double re_floor = 1e-12 * std::abs(d.ell);
    if (d.ell.real() < -re_floor || (std::abs(d.ell.real()) <= re_floor && d.ell.imag() < 0.0)) {
        d.ell = -d.ell;
        for (cplx& v : d.values) v = -v;
        z1 = -z1;
        z2 = -z2;
    }
    return d;
}

Atom pair_at_eigenvalue(const DistinguishedSolution& d) {
    double a2 = std::norm(d.ell);
    if (!(a2 > 1e-16)) throw ZeroEll();
    Atom a;
    a.location = d.lambda;
    a.nu_mass = 0.5 * a2;
    a.psi_value = std::conj(d.ell * d.ell) / a2;
    return a;
}

}  // namespace tw
