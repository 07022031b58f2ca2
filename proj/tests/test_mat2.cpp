#include "testutil.hpp"

using namespace tw;
using twtest::random_mat;
using twtest::random_well_conditioned;

TEST_CASE("structure matrices") {
    Mat2 sx = Mat2::sigma_x();
    CHECK_MAT_NEAR(sx * sx, Mat2::identity(), 1e-15);
    CHECK_MAT_NEAR(Mat2::p_plus() * Mat2::p_minus(), Mat2::zero(), 1e-15);
    CHECK_MAT_NEAR(sx * Mat2::p_plus(), Mat2::p_plus(), 1e-15);
    CHECK_MAT_NEAR(Mat2::p_plus() * sx, Mat2::p_plus(), 1e-15);
    CHECK_MAT_NEAR(sx * Mat2::p_minus(), -Mat2::p_minus(), 1e-15);
    CHECK_MAT_NEAR(Mat2::p_plus() + Mat2::p_minus(), Mat2::identity(), 1e-15);
}

TEST_CASE("inverse basics") {
    CHECK_MAT_NEAR(inverse(Mat2::identity()), Mat2::identity(), 1e-15);
    CHECK_MAT_NEAR(inverse(Mat2::sigma_x()), Mat2::sigma_x(), 1e-15);
    Mat2 d = Mat2::diag(2.0, cplx(0.0, -1.0));
    CHECK_MAT_NEAR(inverse(d), Mat2::diag(0.5, cplx(0.0, 1.0)), 1e-15);
    CHECK_THROWS_AS((void)inverse(Mat2{1.0, 1.0, 1.0, 1.0}), SingularMatrix);
    CHECK_THROWS_AS((void)inverse(Mat2::zero()), SingularMatrix);
}

TEST_CASE("inverse round-trip on random well-conditioned input") {
    for (int i = 0; i < 200; ++i) {
        Mat2 a = random_well_conditioned();
        double cond = opnorm(a) * opnorm(inverse(a));
        CHECK((a * inverse(a) - Mat2::identity()).fnorm() <= 1e-12 * cond);
    }
}

TEST_CASE("herm_imag") {
    CHECK_MAT_NEAR(herm_imag(Mat2::identity()), Mat2::zero(), 1e-15);
    CHECK_MAT_NEAR(herm_imag(cplx(0.0, 1.0) * Mat2::identity()), Mat2::identity(), 1e-15);
    // (m - m*)/2i for m = i E12: the off-diagonal pair becomes real 1/2
    Mat2 m{0.0, cplx(0.0, 1.0), 0.0, 0.0};
    Mat2 want{0.0, 0.5, 0.5, 0.0};
    CHECK_MAT_NEAR(herm_imag(m), want, 1e-15);
    for (int i = 0; i < 100; ++i) {
        Mat2 h = herm_imag(random_mat(3.0));
        CHECK((h - h.adjoint()).fnorm() <= 1e-14 * (1.0 + h.fnorm()));
    }
}

TEST_CASE("boundary matrices") {
    auto [s0, c0, a0] = robin_matrices(BoundaryParam::finite(0.0));
    CHECK_MAT_NEAR(s0, Mat2::identity(), 1e-15);
    CHECK_MAT_NEAR(c0, Mat2::zero(), 1e-15);
    REQUIRE(a0.has_value());
    CHECK_MAT_NEAR(*a0, Mat2::zero(), 1e-15);

    auto [si, ci, ai] = robin_matrices(BoundaryParam::inf());
    CHECK_MAT_NEAR(si, Mat2::zero(), 1e-15);
    CHECK_MAT_NEAR(ci, Mat2::sigma_x(), 1e-15);
    CHECK(!ai.has_value());

    auto [s1, c1, a1] = robin_matrices(BoundaryParam::finite(1.0));
    double r2 = 1.0 / std::sqrt(2.0);
    CHECK_MAT_NEAR(s1, r2 * Mat2::identity(), 1e-15);
    CHECK_MAT_NEAR(c1, r2 * Mat2::sigma_x(), 1e-15);
}

TEST_CASE("S,C identities for random alpha") {
    for (int i = 0; i < 100; ++i) {
        BoundaryParam bp =
            (i == 0) ? BoundaryParam::inf() : BoundaryParam::finite(twtest::random_cplx(5.0));
        auto [S, C, A] = robin_matrices(bp);
        (void)A;
        CHECK_MAT_NEAR(S * S + C * C, Mat2::identity(), 1e-14);
        CHECK_MAT_NEAR(S * C - C * S, Mat2::zero(), 1e-14);
    }
}

TEST_CASE("hermitian eigenvalues and psd predicate") {
    Mat2 h{2.0, cplx(0.0, 1.0), cplx(0.0, -1.0), 2.0};
    auto ev = herm_eigs(h);
    CHECK(ev[0] == doctest::Approx(1.0));
    CHECK(ev[1] == doctest::Approx(3.0));
    CHECK(is_psd(h, 1e-12));
    CHECK(!is_psd(Mat2::diag(-1.0, 1.0), 1e-12));
    CHECK(is_hermitian(h, 1e-14));
    CHECK(!is_hermitian(Mat2{0.0, 1.0, 0.0, 0.0}, 1e-6));
}
