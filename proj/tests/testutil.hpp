#pragma once

#include <doctest.h>

#include <complex>
#include <random>
#include <vector>

#include "tw/mat2.hpp"

namespace twtest {

using tw::cplx;
using tw::Mat2;

inline std::mt19937_64& rng() {
    static std::mt19937_64 gen(0x5eed5eedULL);
    return gen;
}

inline double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline cplx random_cplx(double scale = 1.0) {
    return scale * cplx(uniform(-1.0, 1.0), uniform(-1.0, 1.0));
}

inline Mat2 random_mat(double scale = 1.0) {
    return {random_cplx(scale), random_cplx(scale), random_cplx(scale), random_cplx(scale)};
}

inline Mat2 random_well_conditioned() {
    for (;;) {
        Mat2 m = random_mat();
        double smax = tw::opnorm(m);
        double smin = std::abs(m.det()) / smax;
        if (smin > 0.2 * smax) return m;
    }
}

inline double mat_dist(const Mat2& a, const Mat2& b) { return (a - b).fnorm(); }

#define CHECK_MAT_NEAR(a, b, tol) CHECK(twtest::mat_dist((a), (b)) <= (tol))

// 4x4 complex matrix exponential by scaling and squaring with a Taylor core;
// independent oracle for constant-coefficient propagation.
struct CMat4 {
    std::array<cplx, 16> e{};

    static CMat4 identity() {
        CMat4 m;
        for (int i = 0; i < 4; ++i) m.e[static_cast<size_t>(5 * i)] = 1.0;
        return m;
    }
    cplx& at(int r, int c) { return e[static_cast<size_t>(4 * r + c)]; }
    const cplx& at(int r, int c) const { return e[static_cast<size_t>(4 * r + c)]; }

    CMat4 operator*(const CMat4& o) const {
        CMat4 out;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                cplx s = 0.0;
                for (int k = 0; k < 4; ++k) s += at(i, k) * o.at(k, j);
                out.at(i, j) = s;
            }
        return out;
    }
    CMat4 operator+(const CMat4& o) const {
        CMat4 out;
        for (size_t i = 0; i < 16; ++i) out.e[i] = e[i] + o.e[i];
        return out;
    }
    CMat4 scaled(cplx s) const {
        CMat4 out;
        for (size_t i = 0; i < 16; ++i) out.e[i] = s * e[i];
        return out;
    }
    double norm1() const {
        double n = 0.0;
        for (const cplx& v : e) n += std::abs(v);
        return n;
    }
};

inline CMat4 expm(const CMat4& a) {
    int squarings = 0;
    double n = a.norm1();
    while (n > 0.25) {
        n *= 0.5;
        ++squarings;
    }
    CMat4 x = a.scaled(std::ldexp(1.0, -squarings));
    CMat4 term = CMat4::identity();
    CMat4 sum = term;
    for (int k = 1; k <= 24; ++k) {
        term = (term * x).scaled(1.0 / k);
        sum = sum + term;
    }
    for (int s = 0; s < squarings; ++s) sum = sum * sum;
    return sum;
}

}  // namespace twtest
