#include "tw/step_kernel.hpp"

#include <cstdlib>
#include <cstring>

namespace tw {

void rk4_step_scalar(Frame& f, const Mat2& g0, const Mat2& gm, const Mat2& g1, double h) {
    const Mat2& y = f.y;
    const Mat2& z = f.dy;
    Mat2 a = g0 * y;
    Mat2 b = y + (0.5 * h) * z;
    Mat2 c = gm * b;
    Mat2 d = b + (0.25 * h * h) * a;
    Mat2 e = gm * d;
    Mat2 w = y + h * z + (0.5 * h * h) * c;
    Mat2 g = g1 * w;
    f.y = y + h * z + (h * h / 6.0) * (a + c + e);
    f.dy = z + (h / 6.0) * (a + 2.0 * c + 2.0 * e + g);
}

#if defined(TW_BUILD_AVX2)
void rk4_step_avx2(Frame& f, const Mat2& g0, const Mat2& gm, const Mat2& g1, double h);

static bool cpu_has_avx2() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

namespace {
StepFn g_forced = nullptr;

StepFn pick_kernel() {
    // TW_STEP_KERNEL=scalar pins the reference path (benchmarks, debugging)
    const char* env = std::getenv("TW_STEP_KERNEL");
    if (env && std::strcmp(env, "scalar") == 0) return rk4_step_scalar;
#if defined(TW_BUILD_AVX2)
    if (cpu_has_avx2()) return rk4_step_avx2;
#endif
    return rk4_step_scalar;
}
}  // namespace

StepFn active_step_kernel() {
    if (g_forced) return g_forced;
    static StepFn chosen = pick_kernel();
    return chosen;
}

std::vector<std::pair<const char*, StepFn>> available_step_kernels() {
    std::vector<std::pair<const char*, StepFn>> out;
    out.emplace_back("scalar", rk4_step_scalar);
#if defined(TW_BUILD_AVX2)
    if (cpu_has_avx2()) out.emplace_back("avx2", rk4_step_avx2);
#endif
    return out;
}

void force_step_kernel(StepFn fn) { g_forced = fn; }

}  // namespace tw
