#include "testutil.hpp"
#include "tw/oracles.hpp"
#include "tw/step_kernel.hpp"
#include "tw/weyl.hpp"

using namespace tw;
using twtest::random_mat;

TEST_CASE("kernel variants agree on random data") {
    auto kernels = available_step_kernels();
    REQUIRE(!kernels.empty());
    CHECK(kernels[0].first == std::string("scalar"));
    for (int trial = 0; trial < 300; ++trial) {
        Frame f0{random_mat(2.0), random_mat(2.0)};
        Mat2 g0 = random_mat(3.0), gm = random_mat(3.0), g1 = random_mat(3.0);
        double h = twtest::uniform(-0.05, 0.05);
        Frame ref = f0;
        rk4_step_scalar(ref, g0, gm, g1, h);
        for (auto& [name, fn] : kernels) {
            Frame f = f0;
            fn(f, g0, gm, g1, h);
            double scale = ref.y.fnorm() + ref.dy.fnorm() + 1.0;
            CHECK((f.y - ref.y).fnorm() + (f.dy - ref.dy).fnorm() <= 1e-13 * scale);
        }
    }
}

TEST_CASE("dispatched kernel is one of the available ones") {
    auto chosen = active_step_kernel();
    bool found = false;
    for (auto& [name, fn] : available_step_kernels())
        if (fn == chosen) found = true;
    CHECK(found);
}

TEST_CASE("force_step_kernel overrides dispatch") {
    force_step_kernel(rk4_step_scalar);
    CHECK(active_step_kernel() == rk4_step_scalar);
    force_step_kernel(nullptr);
}

TEST_CASE("fourth-order convergence on a harmonic frame") {
    // Y'' = -Y, Y(0) = I, Y'(0) = 0 => Y(x) = cos(x) I
    Mat2 g = -1.0 * Mat2::identity();
    auto err_for = [&](double h) {
        Frame f{Mat2::identity(), Mat2::zero()};
        long n = std::lround(1.0 / h);
        for (long i = 0; i < n; ++i) rk4_step_scalar(f, g, g, g, h);
        return (f.y - std::cos(1.0) * Mat2::identity()).fnorm();
    };
    double e1 = err_for(1e-2), e2 = err_for(5e-3);
    CHECK(e1 / e2 > 12.0);  // ~2^4
    CHECK(e1 / e2 < 20.0);
}

TEST_CASE("kernel variants agree through the whole M-function pipeline") {
    using namespace tw;
    Problem p{Potential::exp_decay(cplx(0.8, 0.6), 1.0), BoundaryParam::finite(cplx(0.4, 0.2)),
              std::nullopt, {}, {}};
    for (cplx lam : {cplx(1.5, 1.0), cplx(3.0, 0.05)}) {
        std::vector<Mat2> results;
        for (auto& [name, fn] : available_step_kernels()) {
            (void)name;
            force_step_kernel(fn);
            results.push_back(m_limit(p, lam, 1e-8).M);
        }
        force_step_kernel(nullptr);
        for (size_t i = 1; i < results.size(); ++i)
            CHECK((results[i] - results[0]).fnorm() <= 1e-11 * (1.0 + results[0].fnorm()));
    }
}
