#include "tw/oracles.hpp"

#include <cmath>

#include "tw/extrapolate.hpp"

namespace tw {

namespace {

cplx sqrt_first_quadrant(cplx lambda) {
    cplx k = std::sqrt(lambda);
    if (k.real() < 0.0) k = -k;
    return k;
}

// ---------------------------------------------------------------------------
// scalar backward machinery: f'' = (q(x) - lambda) f, decaying branch

struct ScalarState {
    cplx f, df;
};

void scalar_rk4(ScalarState& s, cplx g0, cplx gm, cplx g1, double h) {
    cplx a = g0 * s.f;
    cplx b = s.f + 0.5 * h * s.df;
    cplx c = gm * b;
    cplx d = b + 0.25 * h * h * a;
    cplx e = gm * d;
    cplx w = s.f + h * s.df + 0.5 * h * h * c;
    cplx g = g1 * w;
    s.f = s.f + h * s.df + h * h / 6.0 * (a + c + e);
    s.df = s.df + h / 6.0 * (a + 2.0 * c + 2.0 * e + g);
}

ScalarState scalar_backward(const Potential& q, cplx lambda, double x_start, ScalarState st,
                            double h) {
    if (x_start <= 0.0) return st;
    std::vector<double> hard;
    for (double b : q.breakpoints())
        if (b < x_start && b > 0.0) hard.push_back(b);
    std::sort(hard.rbegin(), hard.rend());
    hard.push_back(0.0);

    double x = x_start;
    long counter = 0;
    for (double target : hard) {
        double len = x - target;
        if (len <= 0.0) continue;
        long n = std::max(1L, static_cast<long>(std::ceil(len / h)));
        double hs = (target - x) / static_cast<double>(n);
        double nud = 1e-6 * hs;
        cplx g_here = q.value_at(x + nud) - lambda;
        for (long i = 0; i < n; ++i) {
            double xa = x + static_cast<double>(i) * hs;
            double xb = (i == n - 1) ? target : xa + hs;
            cplx gm = q.value_at(0.5 * (xa + xb)) - lambda;
            cplx gb = q.value_at((i == n - 1) ? xb - nud : xb) - lambda;
            scalar_rk4(st, g_here, gm, gb, hs);
            g_here = gb;
            if (++counter % 32 == 0) {
                double m = std::max(std::abs(st.f), std::abs(st.df));
                if (m > 0.0) {
                    st.f /= m;
                    st.df /= m;
                }
            }
        }
        x = target;
    }
    return st;
}

struct ScalarBoundary {
    double sin_g, cos_g;  // sin gamma, cos gamma of the boundary condition
};

ScalarBoundary scalar_gamma(const BoundaryParam& alpha) {
    if (alpha.infinite) return {0.0, 1.0};
    if (alpha.alpha.imag() != 0.0) throw Error("scalar m-function needs a real boundary parameter");
    double a = alpha.alpha.real();
    double w = 1.0 / std::sqrt(1.0 + a * a);
    return {w, a * w};
}

cplx scalar_m_upper(const Potential& q, const BoundaryParam& alpha, cplx lambda) {
    cplx k = sqrt_first_quadrant(lambda);
    double absk = std::max(std::abs(k), 1e-6);
    if (q.offset().imag() != 0.0) throw Error("scalar m-function needs a real potential");

    double L = q.effective_support(1e-13 * absk);
    if (!std::isfinite(L)) throw Error("scalar m-function: potential has no decaying tail");
    double h = std::min(StepPolicy{}.step_for(lambda),
                        std::pow(1e-10 * 30.0 / ((L + 1.0) * std::pow(absk + 1.0, 5)), 0.25));
    h = std::max(h, 1e-7);

    // decaying free solution e^{i k_t x} of the constant-tail equation
    cplx kt = std::sqrt(lambda - q.offset());
    if (kt.imag() < 0.0) kt = -kt;
    ScalarState st{1.0, cplx(0.0, 1.0) * kt};
    st = scalar_backward(q, lambda, L, st, h);

    ScalarBoundary g = scalar_gamma(alpha);
    cplx num = -g.sin_g * st.f + g.cos_g * st.df;
    cplx den = g.cos_g * st.f + g.sin_g * st.df;
    if (std::abs(den) == 0.0) throw SingularMatrix("scalar m-function pole");
    return num / den;
}

}  // namespace

cplx scalar_m(const Potential& q_real, const BoundaryParam& alpha, cplx lambda) {
    if (lambda.imag() == 0.0) throw Error("scalar_m: lambda must be non-real");
    if (lambda.imag() < 0.0) return std::conj(scalar_m(q_real, alpha, std::conj(lambda)));
    return scalar_m_upper(q_real, alpha, lambda);
}

double scalar_sigma_density(const Potential& q_real, const BoundaryParam& alpha, double lambda,
                            std::span<const double> eps_seq) {
    std::vector<Mat2> vals;
    vals.reserve(eps_seq.size());
    for (double e : eps_seq) {
        cplx m = scalar_m(q_real, alpha, cplx(lambda, e));
        vals.push_back(Mat2::diag(m.imag() / M_PI, 0.0));
    }
    auto ex = extrapolate_to_zero(eps_seq, vals);
    return ex.value.a11.real();
}

// ---------------------------------------------------------------------------

FreeCaseParams free_case_params(const BoundaryParam& alpha) {
    FreeCaseParams out{alpha, std::nullopt, std::nullopt};
    if (alpha.infinite || alpha.alpha == cplx(0.0)) return out;
    double ra = alpha.alpha.real(), ia = alpha.alpha.imag();
    cplx root = std::sqrt(cplx(ra * ra + 2.0 * ia * ia));
    out.k_plus = 0.5 * cplx(1.0, 1.0) * (ra + cplx(0.0, 1.0) * root);
    out.k_minus = 0.5 * cplx(1.0, 1.0) * (ra - cplx(0.0, 1.0) * root);
    return out;
}

Mat2 free_m(const BoundaryParam& alpha, cplx lambda) {
    if (lambda.imag() < 0.0) return free_m(alpha, std::conj(lambda)).adjoint();
    cplx k = sqrt_first_quadrant(lambda);
    cplx i(0.0, 1.0);
    Mat2 pp = Mat2::p_plus(), pm = Mat2::p_minus();
    if (alpha.infinite) return k * (i * pp + pm);
    if (alpha.alpha == cplx(0.0)) return (1.0 / k) * (i * pp - pm);

    cplx a = alpha.alpha;
    double ra = a.real(), ia = a.imag();
    Mat2 A = Mat2::diag(std::conj(a), a);
    Mat2 eA = Mat2::sigma_x() * A;
    cplx root = std::sqrt(cplx(ra * ra + 2.0 * ia * ia));
    cplx kp = 0.5 * cplx(1.0, 1.0) * (ra + i * root);
    cplx km = 0.5 * cplx(1.0, 1.0) * (ra - i * root);

    Mat2 ppi = pp + i * pm;
    Mat2 inner = (k * k) * Mat2::identity() - k * (ppi * A) - i * Mat2::identity();
    Mat2 num = eA * inner + (i * k) * ppi;
    return (1.0 / ((k - kp) * (k - km))) * num;
}

FreePair free_pair(const BoundaryParam& alpha, double lambda) {
    if (!(lambda > 0.0)) throw Error("free_pair: lambda must be positive");
    double rt = std::sqrt(lambda);
    FreePair out;
    out.sample.s = lambda;
    out.sample.err_est = 0.0;
    if (alpha.infinite) {
        out.sample.nu_density = rt / (2.0 * M_PI);
        out.sample.psi = 1.0;
        return out;
    }
    cplx a = alpha.alpha;
    double ra = a.real(), na = std::norm(a);
    double num = rt * std::norm(rt - a);
    double den = (rt * ra - na) * (rt * ra - na) + lambda * (rt - ra) * (rt - ra);
    if (den == 0.0) {
        // removable 0/0 exactly at the embedded point mass of a positive alpha;
        // the a.c. phase limit there is 1, the atom itself carries -1
        out.sample.nu_density = (1.0 + na) / (4.0 * M_PI * ra);
        out.sample.psi = 1.0;
    } else {
        out.sample.nu_density = (1.0 + na) / (2.0 * M_PI) * num / den;
        out.sample.psi = (rt - a) / (rt - std::conj(a));
    }
    if (a.imag() == 0.0 && ra > 0.0 && std::abs(lambda - ra * ra) <= 1e-12 * (1.0 + lambda)) {
        out.atom = Atom{ra * ra, ra * (1.0 + ra * ra), -1.0};
    }
    return out;
}

}  // namespace tw
