#pragma once

#include <utility>
#include <vector>

#include "tw/mat2.hpp"

namespace tw {

/// Cauchy data (Y, Y') of a 2x2 matrix solution of Y'' = G(x) Y.
/// Memory layout is 16 contiguous doubles (interleaved re/im, row-major),
/// which is what the vector kernels rely on.
struct Frame {
    Mat2 y, dy;
};

/// One classical RK4 step of signed length h for Y'' = G(x)Y, with the
/// coefficient matrix sampled at the step's endpoints and midpoint.
using StepFn = void (*)(Frame& f, const Mat2& g0, const Mat2& gm, const Mat2& g1, double h);

void rk4_step_scalar(Frame& f, const Mat2& g0, const Mat2& gm, const Mat2& g1, double h);

/// The kernel the propagators use; picked once per process from what the CPU
/// supports, unless a test forced one.
StepFn active_step_kernel();

/// All kernels usable on this machine, with names ("scalar", "avx2", ...).
std::vector<std::pair<const char*, StepFn>> available_step_kernels();

/// Test hook; pass nullptr to restore automatic dispatch.
void force_step_kernel(StepFn fn);

}  // namespace tw
