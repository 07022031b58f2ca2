// AVX2+FMA variant of the RK4 frame step. A 2x2 complex matrix is held as two
// 256-bit rows [re, im, re, im]; the multiply is the usual broadcast/fmaddsub
// complex scheme. Must stay bit-for-bit within roundoff of rk4_step_scalar
// (equivalence-tested), not bit-identical: FMA contraction differs.

#include <immintrin.h>

#include "tw/step_kernel.hpp"

namespace tw {

namespace {

struct VMat {
    __m256d r0, r1;
};

inline VMat load(const Mat2& m) {
    const double* p = reinterpret_cast<const double*>(&m);
    return {_mm256_loadu_pd(p), _mm256_loadu_pd(p + 4)};
}

inline void store(Mat2& m, const VMat& v) {
    double* p = reinterpret_cast<double*>(&m);
    _mm256_storeu_pd(p, v.r0);
    _mm256_storeu_pd(p + 4, v.r1);
}

// (re,im) complex scalar at lane pair <idx> of row times 2-complex row vector
template <int RE, int IM>
inline __m256d cmul_bcast(__m256d row, __m256d v) {
    __m256d re = _mm256_permute4x64_pd(row, RE * 0x55);
    __m256d im = _mm256_permute4x64_pd(row, IM * 0x55);
    __m256d vswap = _mm256_permute_pd(v, 0x5);
    return _mm256_fmaddsub_pd(re, v, _mm256_mul_pd(im, vswap));
}

inline VMat mul(const VMat& a, const VMat& b) {
    VMat c;
    c.r0 = _mm256_add_pd(cmul_bcast<0, 1>(a.r0, b.r0), cmul_bcast<2, 3>(a.r0, b.r1));
    c.r1 = _mm256_add_pd(cmul_bcast<0, 1>(a.r1, b.r0), cmul_bcast<2, 3>(a.r1, b.r1));
    return c;
}

inline VMat add(const VMat& a, const VMat& b) {
    return {_mm256_add_pd(a.r0, b.r0), _mm256_add_pd(a.r1, b.r1)};
}

// a + s*b for real s
inline VMat axpy(double s, const VMat& b, const VMat& a) {
    __m256d vs = _mm256_set1_pd(s);
    return {_mm256_fmadd_pd(vs, b.r0, a.r0), _mm256_fmadd_pd(vs, b.r1, a.r1)};
}

}  // namespace

void rk4_step_avx2(Frame& f, const Mat2& mg0, const Mat2& mgm, const Mat2& mg1, double h) {
    VMat y = load(f.y), z = load(f.dy);
    VMat g0 = load(mg0), gm = load(mgm), g1 = load(mg1);

    VMat a = mul(g0, y);
    VMat b = axpy(0.5 * h, z, y);
    VMat c = mul(gm, b);
    VMat d = axpy(0.25 * h * h, a, b);
    VMat e = mul(gm, d);
    VMat w = axpy(0.5 * h * h, c, axpy(h, z, y));
    VMat g = mul(g1, w);

    VMat ynew = axpy(h * h / 6.0, add(add(a, c), e), axpy(h, z, y));
    VMat znew = axpy(h / 6.0, add(add(a, g), axpy(2.0, add(c, e), {_mm256_setzero_pd(), _mm256_setzero_pd()})), z);

    store(f.y, ynew);
    store(f.dy, znew);
}

}  // namespace tw
