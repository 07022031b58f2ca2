#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "tw/mat2.hpp"

namespace tw {

/// A bounded potential on [0, domain_length). Scalar kinds describe a complex
/// q(x); the operator sees its 2x2 hermitization [[0, q], [conj q, 0]].
/// GeneralHermitian supplies the matrix directly.
///
/// Every scalar kind carries an optional constant complex offset, so that
/// q(x) = base(x) + offset. The offset is the value the potential approaches
/// beyond its effective support; it is what the analytic tail closure of the
/// Weyl machinery matches against.
class Potential {
public:
    enum class Kind { Zero, Constant, Step, ExpDecay, Table, GeneralHermitian };

    struct Segment {
        double x_lo, x_hi;
        cplx value;
    };

    static Potential zero();
    static Potential constant(cplx c);
    static Potential step(std::vector<Segment> segments);
    static Potential exp_decay(cplx amplitude, double rate);
    /// Piecewise-linear interpolation through strictly increasing sample points;
    /// q = offset outside [x_front, x_back].
    static Potential table(std::vector<double> xs, std::vector<cplx> values);
    /// callback must return Hermitian matrices; sup_bound must dominate the norm.
    /// support_end, when finite, promises Q(x) = 0 for x > support_end.
    static Potential general_hermitian(std::function<Mat2(double)> q, double sup_bound,
                                       double support_end = std::numeric_limits<double>::infinity());

    Potential with_offset(cplx offset) const;
    Potential with_domain_length(double len) const;

    Kind kind() const { return kind_; }
    bool is_scalar() const { return kind_ != Kind::GeneralHermitian; }
    double domain_length() const { return domain_length_; }
    bool domain_finite() const { return std::isfinite(domain_length_); }
    cplx offset() const { return offset_; }

    /// Scalar value q(x). Throws for GeneralHermitian kinds and x outside the domain.
    cplx value_at(double x) const;

    /// The hermitized matrix Q(x).
    Mat2 matrix_at(double x) const;

    /// Finite bound on sup_x ||Q(x)|| (operator norm; equals sup |q| for scalar kinds).
    double sup_norm() const;

    /// Integral of ||Q(x) - Q_tail|| over (x, domain end), where Q_tail is the
    /// hermitization of the constant offset. Infinite when the potential has no
    /// decaying tail (Constant counts as pure tail, so its value is 0).
    double tail_integral(double x) const;

    /// Smallest L with tail_integral(L) <= bound, or +inf if unattainable.
    double effective_support(double bound) const;

    /// x-values the ODE grid must hit exactly (jump points, interpolation nodes).
    const std::vector<double>& breakpoints() const { return breakpoints_; }

    // raw parameters, for serialization
    cplx const_value() const { return const_value_; }
    cplx amplitude() const { return amplitude_; }
    double rate() const { return rate_; }
    const std::vector<Segment>& segments() const { return segments_; }
    const std::vector<double>& table_xs() const { return xs_; }
    const std::vector<cplx>& table_values() const { return values_; }

    /// Build the GeneralHermitian view of a scalar potential.
    Potential hermitized() const;

    /// Potential of the adjoint operator: q -> conj q (Q -> transpose Q).
    Potential conjugated() const;

private:
    Kind kind_ = Kind::Zero;
    cplx offset_{};
    double domain_length_ = std::numeric_limits<double>::infinity();

    cplx const_value_{};                  // Constant
    std::vector<Segment> segments_;       // Step
    cplx amplitude_{};                    // ExpDecay
    double rate_ = 1.0;                   // ExpDecay
    std::vector<double> xs_;              // Table
    std::vector<cplx> values_;            // Table
    std::function<Mat2(double)> callback_;  // GeneralHermitian
    double callback_sup_ = 0.0;
    double callback_support_ = std::numeric_limits<double>::infinity();

    std::vector<double> breakpoints_;

    cplx base_value_at(double x) const;
    void check_domain(double x) const;
};

/// Hermitization of a scalar value.
inline Mat2 hermitize(cplx q) { return {0.0, q, std::conj(q), 0.0}; }

/// Truncation policy for the b -> infinity limit.
struct Truncation {
    double b_min = 10.0;
    double b_max = 6.4e4;
    double growth = 1.6;
};

/// Fixed-order step policy: h = min(h_max, c / (1 + sqrt(|lambda|))).
struct StepPolicy {
    double h_max = 1e-2;
    double c = 0.1;

    double step_for(cplx lambda) const {
        return std::min(h_max, c / (1.0 + std::sqrt(std::abs(lambda))));
    }
};

/// The operator: potential, left boundary parameter, optional right boundary
/// parameter (finite intervals only), truncation and step policies.
struct Problem {
    Potential potential;
    BoundaryParam alpha;
    std::optional<BoundaryParam> beta;  // present iff potential domain is finite
    Truncation truncation;
    StepPolicy ode_step;

    /// The adjoint operator's problem: (conj q, conj alpha).
    Problem conjugated() const {
        Problem p = *this;
        p.potential = potential.conjugated();
        p.alpha = alpha.conjugated();
        if (p.beta) p.beta = p.beta->conjugated();
        return p;
    }
};

}  // namespace tw
