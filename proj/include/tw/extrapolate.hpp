#pragma once

#include <span>
#include <vector>

#include "tw/mat2.hpp"

namespace tw {

/// Weights of polynomial extrapolation to 0 through the given abscissas
/// (Lagrange basis evaluated at 0). abscissas must be distinct and positive.
inline std::vector<double> extrapolation_weights(std::span<const double> eps) {
    size_t n = eps.size();
    std::vector<double> w(n, 1.0);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (j != i) w[i] *= eps[j] / (eps[j] - eps[i]);
    return w;
}

struct MatExtrapolation {
    Mat2 value;       // polynomial extrapolation through all points
    Mat2 previous;    // same without the finest point (one order lower)
    double residual;  // ||value - previous||, the extrapolation's own error gauge
    double amplification;  // sum |weights|; multiplies per-point input errors
};

/// Extrapolate matrix samples f(eps_i) to eps -> 0. Needs >= 2 points,
/// eps strictly decreasing.
inline MatExtrapolation extrapolate_to_zero(std::span<const double> eps,
                                            std::span<const Mat2> f) {
    if (eps.size() < 2 || eps.size() != f.size())
        throw Error("extrapolate_to_zero: need >= 2 matching samples");
    for (size_t i = 1; i < eps.size(); ++i)
        if (!(eps[i] < eps[i - 1]) || !(eps[i] > 0.0))
            throw Error("extrapolate_to_zero: eps must be positive, strictly decreasing");

    auto combine = [&](size_t lo, size_t hi) {
        std::vector<double> e(eps.begin() + lo, eps.begin() + hi);
        auto w = extrapolation_weights(e);
        Mat2 acc = Mat2::zero();
        double amp = 0.0;
        for (size_t i = 0; i < w.size(); ++i) {
            acc += w[i] * f[lo + i];
            amp += std::abs(w[i]);
        }
        return std::pair<Mat2, double>(acc, amp);
    };
    auto [full, amp_full] = combine(0, eps.size());
    auto [prev, amp_prev] = combine(1, eps.size());  // drop the coarsest point
    (void)amp_prev;
    return {full, prev, (full - prev).fnorm(), amp_full};
}

}  // namespace tw
