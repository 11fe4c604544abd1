#pragma once

#include "alm/errors.hpp"

#include <cmath>
#include <utility>

namespace alm {

struct RootOptions {
    double x_tol = 1e-10;   // bracket width at termination
    double f_tol = 1e-9;    // acceptable residual at the root
    int max_iter = 200;
};

struct RootResult {
    double root = 0.0;
    double f_root = 0.0;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    int iterations = 0;
};

// Brent's method on a bracketing interval [lo, hi] with f(lo)*f(hi) <= 0.
// Bisection fallback with inverse-quadratic / secant acceleration.
template <class F>
RootResult brent(F&& f, double lo, double hi, const RootOptions& opts = {}) {
    double a = lo, b = hi;
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return {a, 0.0, a, a, 0};
    if (fb == 0.0) return {b, 0.0, b, b, 0};
    if ((fa > 0.0) == (fb > 0.0)) {
        throw NumericalFailure("brent: endpoints do not bracket a root");
    }

    double c = a, fc = fa;
    double d = b - a, e = d;
    int iter = 0;
    for (; iter < opts.max_iter; ++iter) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a; fc = fa;
            d = b - a; e = d;
        }
        if (std::fabs(fc) < std::fabs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 = 2.0 * 2.220446049250313e-16 * std::fabs(b) + 0.5 * opts.x_tol;
        const double xm = 0.5 * (c - b);
        if (std::fabs(xm) <= tol1 || fb == 0.0) break;

        if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
            // attempt inverse quadratic (or secant when a == c)
            const double s = fb / fa;
            double p, q;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                const double qq = fa / fc;
                const double rr = fb / fc;
                p = s * (2.0 * xm * qq * (qq - rr) - (b - a) * (rr - 1.0));
                q = (qq - 1.0) * (rr - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::fabs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::fabs(tol1 * q), std::fabs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm; e = d;
            }
        } else {
            d = xm; e = d;
        }
        a = b; fa = fb;
        b += (std::fabs(d) > tol1) ? d : (xm > 0.0 ? tol1 : -tol1);
        fb = f(b);
    }
    if (iter >= opts.max_iter) {
        throw NumericalFailure("brent: iteration limit reached");
    }
    RootResult res;
    res.root = b;
    res.f_root = fb;
    res.bracket_lo = std::min(b, c);
    res.bracket_hi = std::max(b, c);
    res.iterations = iter;
    return res;
}

} // namespace alm
