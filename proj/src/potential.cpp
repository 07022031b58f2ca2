#include "tw/potential.hpp"

#include <algorithm>
#include <cmath>

namespace tw {

Potential Potential::zero() { return Potential{}; }

Potential Potential::constant(cplx c) {
    Potential p;
    p.kind_ = Kind::Constant;
    p.const_value_ = c;
    return p;
}

Potential Potential::step(std::vector<Segment> segments) {
    Potential p;
    p.kind_ = Kind::Step;
    std::sort(segments.begin(), segments.end(),
              [](const Segment& a, const Segment& b) { return a.x_lo < b.x_lo; });
    for (size_t i = 0; i < segments.size(); ++i) {
        if (segments[i].x_hi <= segments[i].x_lo)
            throw Error("step potential: empty or inverted segment");
        if (i > 0 && segments[i].x_lo < segments[i - 1].x_hi)
            throw Error("step potential: overlapping segments");
        p.breakpoints_.push_back(segments[i].x_lo);
        p.breakpoints_.push_back(segments[i].x_hi);
    }
    p.segments_ = std::move(segments);
    return p;
}

Potential Potential::exp_decay(cplx amplitude, double rate) {
    if (!(rate > 0.0)) throw Error("exp_decay potential: rate must be positive");
    Potential p;
    p.kind_ = Kind::ExpDecay;
    p.amplitude_ = amplitude;
    p.rate_ = rate;
    return p;
}

Potential Potential::table(std::vector<double> xs, std::vector<cplx> values) {
    if (xs.size() != values.size() || xs.size() < 2)
        throw Error("table potential: need at least two samples");
    for (size_t i = 1; i < xs.size(); ++i)
        if (!(xs[i] > xs[i - 1])) throw Error("table potential: x values must be strictly increasing");
    Potential p;
    p.kind_ = Kind::Table;
    p.breakpoints_ = xs;
    p.xs_ = std::move(xs);
    p.values_ = std::move(values);
    return p;
}

Potential Potential::general_hermitian(std::function<Mat2(double)> q, double sup_bound,
                                       double support_end) {
    Potential p;
    p.kind_ = Kind::GeneralHermitian;
    p.callback_ = std::move(q);
    p.callback_sup_ = sup_bound;
    p.callback_support_ = support_end;
    return p;
}

Potential Potential::with_offset(cplx offset) const {
    if (kind_ == Kind::GeneralHermitian) throw Error("offset applies to scalar kinds only");
    Potential p = *this;
    p.offset_ = offset;
    return p;
}

Potential Potential::with_domain_length(double len) const {
    if (!(len > 0.0)) throw Error("domain length must be positive");
    Potential p = *this;
    p.domain_length_ = len;
    return p;
}

void Potential::check_domain(double x) const {
    if (x < 0.0 || x > domain_length_) throw OutOfDomain();
}

cplx Potential::base_value_at(double x) const {
    switch (kind_) {
        case Kind::Zero:
            return 0.0;
        case Kind::Constant:
            return const_value_;
        case Kind::Step: {
            for (const Segment& s : segments_)
                if (x >= s.x_lo && x < s.x_hi) return s.value;
            return 0.0;
        }
        case Kind::ExpDecay:
            return amplitude_ * std::exp(-rate_ * x);
        case Kind::Table: {
            if (x < xs_.front() || x > xs_.back()) return 0.0;
            auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
            size_t i = static_cast<size_t>(it - xs_.begin());
            if (i == 0) return values_.front();
            if (i == xs_.size()) return values_.back();
            double t = (x - xs_[i - 1]) / (xs_[i] - xs_[i - 1]);
            return values_[i - 1] + t * (values_[i] - values_[i - 1]);
        }
        case Kind::GeneralHermitian:
            throw Error("value_at: potential is matrix-valued");
    }
    return 0.0;
}

cplx Potential::value_at(double x) const {
    check_domain(x);
    return base_value_at(x) + offset_;
}

Mat2 Potential::matrix_at(double x) const {
    check_domain(x);
    if (kind_ == Kind::GeneralHermitian) {
        return x > callback_support_ ? Mat2::zero() : callback_(x);
    }
    return hermitize(base_value_at(x) + offset_);
}

double Potential::sup_norm() const {
    double base = 0.0;
    switch (kind_) {
        case Kind::Zero:
            base = 0.0;
            break;
        case Kind::Constant:
            base = std::abs(const_value_);
            break;
        case Kind::Step:
            for (const Segment& s : segments_) base = std::max(base, std::abs(s.value));
            break;
        case Kind::ExpDecay:
            base = std::abs(amplitude_);
            break;
        case Kind::Table:
            for (const cplx& v : values_) base = std::max(base, std::abs(v));
            break;
        case Kind::GeneralHermitian:
            return callback_sup_;
    }
    return base + std::abs(offset_);
}

double Potential::tail_integral(double x) const {
    double inf = std::numeric_limits<double>::infinity();
    if (domain_finite()) {
        // finite intervals never use a tail closure; treat as no tail
        return x >= domain_length_ ? 0.0 : inf;
    }
    switch (kind_) {
        case Kind::Zero:
        case Kind::Constant:
            return 0.0;
        case Kind::Step: {
            double s = 0.0;
            for (const Segment& seg : segments_) {
                double lo = std::max(x, seg.x_lo), hi = seg.x_hi;
                if (hi > lo) s += (hi - lo) * std::abs(seg.value);
            }
            return s;
        }
        case Kind::ExpDecay:
            return std::abs(amplitude_) * std::exp(-rate_ * x) / rate_;
        case Kind::Table: {
            if (x >= xs_.back()) return 0.0;
            // piecewise-linear |q|; crude (exact would integrate |linear|), upper bound instead
            double s = 0.0;
            for (size_t i = 1; i < xs_.size(); ++i) {
                double lo = std::max(x, xs_[i - 1]), hi = xs_[i];
                if (hi > lo) s += (hi - lo) * std::max(std::abs(values_[i - 1]), std::abs(values_[i]));
            }
            return s;
        }
        case Kind::GeneralHermitian:
            if (x >= callback_support_) return 0.0;
            if (std::isfinite(callback_support_)) return (callback_support_ - x) * callback_sup_;
            return inf;
    }
    return inf;
}

double Potential::effective_support(double bound) const {
    double inf = std::numeric_limits<double>::infinity();
    if (domain_finite()) return inf;
    switch (kind_) {
        case Kind::Zero:
        case Kind::Constant:
            return 0.0;
        case Kind::Step:
            return segments_.empty() ? 0.0 : segments_.back().x_hi;
        case Kind::ExpDecay: {
            double a = std::abs(amplitude_);
            if (a == 0.0) return 0.0;
            double L = std::log(a / (rate_ * bound)) / rate_;
            return std::max(0.0, L);
        }
        case Kind::Table:
            return xs_.back();
        case Kind::GeneralHermitian:
            return std::isfinite(callback_support_) ? callback_support_ : inf;
    }
    return inf;
}

Potential Potential::hermitized() const {
    if (kind_ == Kind::GeneralHermitian) return *this;
    double support = std::numeric_limits<double>::infinity();
    if (offset_ == cplx(0.0)) {
        if (kind_ == Kind::Zero) support = 0.0;
        if (kind_ == Kind::Step) support = segments_.empty() ? 0.0 : segments_.back().x_hi;
        if (kind_ == Kind::Table) support = xs_.back();
    }
    Potential self = *this;
    Potential p = general_hermitian([self](double x) { return self.matrix_at(x); }, sup_norm(), support);
    p.breakpoints_ = breakpoints_;
    p.domain_length_ = domain_length_;
    return p;
}

Potential Potential::conjugated() const {
    Potential p = *this;
    p.offset_ = std::conj(offset_);
    p.const_value_ = std::conj(const_value_);
    p.amplitude_ = std::conj(amplitude_);
    for (Segment& s : p.segments_) s.value = std::conj(s.value);
    for (cplx& v : p.values_) v = std::conj(v);
    if (kind_ == Kind::GeneralHermitian) {
        auto cb = callback_;
        p.callback_ = [cb](double x) { return cb(x).transp(); };
    }
    return p;
}

}  // namespace tw
