#pragma once

#include "alm/errors.hpp"

#include <cmath>
#include <utility>

namespace alm {

struct QuadOptions {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_depth = 60;
};

namespace detail {

// 15-point Gauss-Legendre nodes/weights on [-1, 1] (positive half; node 0 once)
inline constexpr double kGlNode[8] = {
    0.0,
    0.2011940939974345223,
    0.3941513470775633699,
    0.57097217260853884754,
    0.72441773136017004742,
    0.8482065834104272162,
    0.93727339240070590431,
    0.98799251802048542849,
};
inline constexpr double kGlWeight[8] = {
    0.20257824192556127288,
    0.19843148532711157646,
    0.18616100001556221103,
    0.16626920581699393355,
    0.13957067792615431445,
    0.10715922046717193501,
    0.070366047488108124709,
    0.030753241996117268355,
};

template <class F>
double gl15(F& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double acc = kGlWeight[0] * f(mid);
    for (int i = 1; i < 8; ++i) {
        const double dx = half * kGlNode[i];
        acc += kGlWeight[i] * (f(mid + dx) + f(mid - dx));
    }
    return acc * half;
}

template <class F>
double adapt(F& f, double a, double b, double whole, double tol, int depth, int max_depth) {
    const double mid = 0.5 * (a + b);
    const double left = gl15(f, a, mid);
    const double right = gl15(f, mid, b);
    const double refined = left + right;
    if (std::fabs(refined - whole) <= tol) return refined;
    if (depth >= max_depth) {
        throw QuadratureFailure("adaptive quadrature: tolerance not met at max depth");
    }
    return adapt(f, a, mid, left, 0.5 * tol, depth + 1, max_depth) +
           adapt(f, mid, b, right, 0.5 * tol, depth + 1, max_depth);
}

} // namespace detail

// Adaptive Gauss-Legendre integration of f over [a, b]. Bisects until the
// two-panel refinement of each interval agrees with its parent panel within
// the local tolerance budget; total error is bounded by max(abs_tol,
// rel_tol*|I|). Throws QuadratureFailure past max_depth.
template <class F>
double integrate(F&& f, double a, double b, const QuadOptions& opts = {}) {
    if (a == b) return 0.0;
    auto& fn = f;
    const double whole = detail::gl15(fn, a, b);
    const double tol = std::max(opts.abs_tol, opts.rel_tol * std::fabs(whole));
    return detail::adapt(fn, a, b, whole, tol, 0, opts.max_depth);
}

} // namespace alm
