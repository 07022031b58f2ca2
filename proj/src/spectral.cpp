#include "tw/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "tw/eigensolver.hpp"
#include "tw/extrapolate.hpp"
#include "tw/oracles.hpp"

namespace tw {

DensityMatrix stieltjes_density(const Problem& p, double lambda, std::span<const double> eps_seq,
                                double m_tol) {
    if (eps_seq.size() < 2) throw Error("stieltjes_density: need at least two eps values");
    std::vector<Mat2> vals;
    vals.reserve(eps_seq.size());
    double cert = 0.0;
    for (double e : eps_seq) {
        MFunctionValue mv = m_limit(p, cplx(lambda, e), m_tol);
        vals.push_back((1.0 / M_PI) * herm_imag(mv.M));
        cert = std::max(cert, mv.disk_radius);
    }
    auto ex = extrapolate_to_zero(eps_seq, vals);
    DensityMatrix out;
    out.density = herm_real(ex.value);  // enforce Hermitian
    out.err_est = ex.residual + ex.amplification * cert / M_PI;
    return out;
}

PairDecomposition decompose_pair(const Mat2& density, double tol, double noise_floor) {
    double d1 = density.a11.real(), d2 = density.a22.real();
    double scale = std::abs(d1) + std::abs(d2) + noise_floor;
    if (std::abs(d1 - d2) > tol * scale)
        throw AsymmetricDensity();
    PairDecomposition out;
    out.nu_density = 0.5 * (d1 + d2);
    if (out.nu_density <= noise_floor) {
        out.psi_defined = false;
        out.psi = 0.0;
        return out;
    }
    out.psi = density.a12 / out.nu_density;
    return out;
}

std::optional<Atom> detect_atom(const Problem& p, double lambda, std::span<const double> delta_seq,
                                double mass_floor, double m_tol) {
    if (delta_seq.size() < 2) throw Error("detect_atom: need at least two delta values");
    std::vector<Mat2> vals;
    vals.reserve(delta_seq.size());
    for (double d : delta_seq) {
        MFunctionValue mv = m_limit(p, cplx(lambda, d), m_tol);
        vals.push_back(cplx(0.0, -d) * mv.M);
    }
    auto ex = extrapolate_to_zero(delta_seq, vals);
    Mat2 mass_matrix = herm_real(ex.value);
    double mass = 0.5 * mass_matrix.trace().real();
    if (!(mass > mass_floor)) return std::nullopt;
    Atom a;
    a.location = lambda;
    a.nu_mass = mass;
    a.psi_value = mass_matrix.a12 / mass;
    return a;
}

namespace {

double ratio_m_tol(const Problem& p, double lambda_abs) {
    double rk = std::sqrt(std::max(lambda_abs, 1.0));
    double scale = p.alpha.infinite ? rk : (1.0 + std::norm(p.alpha.alpha)) / rk;
    return 2e-3 * std::max(scale, 1e-3);
}

}  // namespace

Mat2 distribution_ratio(const Problem& p, double r, int sign, const RatioOptions& opts) {
    if (!(r > 0.0)) throw Error("distribution_ratio: r must be positive");
    if (sign != 1 && sign != -1) throw Error("distribution_ratio: sign must be +-1");

    // atoms first: their masses are added directly and their Poisson tails
    // exclude a window of the a.c. quadrature around each location
    std::vector<Atom> atoms;
    if (opts.atoms) {
        atoms = *opts.atoms;
    } else {
        double cap = std::min(r, opts.atom_scan_cap + 2.0 * p.potential.sup_norm());
        if (cap > 1e-2 && !p.potential.domain_finite()) {
            try {
                for (double s : find_singular_values(p, 1e-2, cap)) {
                    if (auto a = detect_atom(p, s, default_delta_schedule())) atoms.push_back(*a);
                }
            } catch (const Error&) {
                // unscannable potential classes carry no located atoms
            }
        }
    }
    auto in_atom_window = [&](double t) {
        for (const Atom& a : atoms) {
            double w = std::max(0.25, 12.0 * opts.eps_base.front() *
                                          std::max(1.0, std::sqrt(a.location)));
            if (std::abs(std::abs(t) - a.location) < w) return true;
        }
        return false;
    };

    // sqrt-graded trapezoid: t = sign * u^2, u in (0, sqrt(r)]; nodes inside
    // an atom window reuse the last clean integrand value (the contaminated
    // boundary values there would swamp the integral)
    double u_max = std::sqrt(r);
    long n = std::lround(std::clamp(opts.nodes_per_unit * u_max, 64.0, 1200.0));
    double du = u_max / static_cast<double>(n);

    Mat2 integral = Mat2::zero();
    Mat2 f_prev = Mat2::zero();  // integrand 2u * density(sign u^2) vanishes at u = 0
    Mat2 density_held = Mat2::zero();
    for (long i = 1; i <= n; ++i) {
        double u = du * static_cast<double>(i);
        double t = sign * u * u;
        if (!in_atom_window(t)) {
            std::vector<double> eps = opts.eps_base;
            if (opts.scale_eps) {
                double s = std::max(1.0, u);
                for (double& e : eps) e *= s;
            }
            density_held = stieltjes_density(p, t, eps, ratio_m_tol(p, u * u)).density;
        }
        Mat2 f = (2.0 * u) * density_held;
        integral += (0.5 * du) * (f_prev + f);
        f_prev = f;
    }

    for (const Atom& a : atoms) {
        if (a.location <= r) {
            cplx psi = sign > 0 ? a.psi_value : -a.psi_value;
            integral += a.nu_mass * Mat2{1.0, psi, std::conj(psi), 1.0};
        }
    }

    double power = p.alpha.infinite ? 1.5 : 0.5;
    return std::pow(r, -power) * integral;
}

ShiftedPair scalar_to_pair_shift(const ScalarMeasureSamples& sigma, double omega) {
    ShiftedPair out;
    out.samples.reserve(sigma.lambda.size());
    for (size_t i = 0; i < sigma.lambda.size(); ++i) {
        double l = sigma.lambda[i];
        if (l < 0.0) throw Error("scalar_to_pair_shift: samples must have lambda >= 0");
        double s = std::sqrt(l * l + omega * omega);
        SpectralSample sample;
        sample.s = s;
        if (l == 0.0) {
            // Jacobian ds = (lambda/s) dlambda degenerates at the band edge
            sample.nu_density = 0.0;
            sample.psi_defined = false;
        } else {
            sample.nu_density = 0.5 * sigma.density[i] * s / l;
            sample.psi = cplx(l, omega) / s;
        }
        out.samples.push_back(sample);
    }
    for (const Atom& a : sigma.atoms) {
        double l = a.location;
        double s = std::sqrt(l * l + omega * omega);
        Atom na;
        na.location = s;
        na.nu_mass = 0.5 * a.nu_mass;
        na.psi_value = s > 0.0 ? cplx(l, omega) / s : cplx(0.0);
        out.atoms.push_back(na);
    }
    return out;
}

double selfadjoint_check(const Problem& p, std::span<const double> grid,
                         std::span<const double> eps_seq) {
    if (!p.potential.is_scalar()) throw Error("selfadjoint_check: scalar potential required");
    if (!p.alpha.is_real()) throw Error("selfadjoint_check: real boundary parameter required");
    double defect = 0.0;
    for (double s : grid) {
        double sig = scalar_sigma_density(p.potential, p.alpha, s, eps_seq);
        DensityMatrix dm = stieltjes_density(p, s, eps_seq);
        PairDecomposition pd = decompose_pair(dm.density);
        cplx psi = pd.psi_defined ? pd.psi : cplx(0.0);
        defect = std::max(defect, std::abs(cplx(sig) - (1.0 + psi) * pd.nu_density));
    }
    return defect;
}

}  // namespace tw
