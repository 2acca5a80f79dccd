#pragma once

#include <optional>

#include "ncfa/step_function.hpp"

namespace ncfa {

// Hardy-Littlewood submajorization y << x: int_0^t y <= int_0^t x for all t.
// Both partial integrals are piecewise linear, so checking at the union of
// breakpoints (plus the largest total length) is exact up to rounding; each
// comparison carries slack rel_tol * (1 + int_0^t x) since mathematically
// tight cases (equal total integrals) flip sign under floating-point noise.
bool hl_submajorize(const StepFunction& y, const StepFunction& x, double rel_tol = 1e-9);

// Uniform submajorization: least lambda in {1..lambda_max} with
// int_{lambda a}^b y <= int_a^b x whenever lambda a <= b, or nullopt.
// For fixed lambda the gap (a,b) -> int_a^b x - int_{lambda a}^b y is
// piecewise linear in each variable separately, so its minimum over the
// region is attained on the grid of breakpoints of x, of y, of y scaled by
// 1/lambda, crossed with the boundary b = lambda a; the check enumerates
// that grid.
std::optional<int> uniform_submajorize(const StepFunction& y, const StepFunction& x, int lambda_max = 64,
                                       double rel_tol = 1e-9);

// single-lambda check used by uniform_submajorize
bool uniform_submajorize_at(const StepFunction& y, const StepFunction& x, int lambda, double rel_tol = 1e-9);

}  // namespace ncfa
