#pragma once

#include <cmath>
#include <utility>

#include "polcoul/errors.hpp"

namespace polcoul {

struct RootOptions {
    double bisect_width = 1e-4;  // bisect the bracket down to this width first
    double xtol = 1e-10;         // then refine with secant steps to this width
    int max_iter = 200;
};

// Bracketed hybrid root finder: bisection until the bracket is narrow, then
// secant steps kept inside the bracket (falling back to bisection when a step
// escapes). Requires f(lo) and f(hi) of opposite sign.
template <class F>
double find_root_bracketed(F&& f, double lo, double hi, RootOptions opt = {}) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw no_root_error("find_root_bracketed: no sign change on bracket");

    int it = 0;
    while (hi - lo > opt.bisect_width && it++ < opt.max_iter) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = f(mid);
        if (fmid == 0.0) return mid;
        if ((fmid > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
            fhi = fmid;
        }
    }

    double a = lo, b = hi, fa = flo, fb = fhi;
    double x = std::abs(fa) < std::abs(fb) ? a : b;
    for (; it < opt.max_iter; ++it) {
        double cand = b - fb * (b - a) / (fb - fa);
        if (!(cand > lo && cand < hi) || !std::isfinite(cand)) cand = 0.5 * (lo + hi);
        const double fc = f(cand);
        a = b;
        fa = fb;
        b = cand;
        fb = fc;
        x = cand;
        if (fc == 0.0) break;
        if ((fc > 0.0) == (flo > 0.0)) {
            lo = cand;
            flo = fc;
        } else {
            hi = cand;
            fhi = fc;
        }
        if (hi - lo <= opt.xtol * std::max(1.0, std::abs(x)) ||
            std::abs(b - a) <= 4e-16 * std::max(1.0, std::abs(x)))
            break;
    }
    // return the bracket endpoint with the smaller residual if it beats x
    const double fx = std::abs(f(x));
    if (std::abs(flo) < fx && std::abs(flo) < std::abs(fhi)) return lo;
    if (std::abs(fhi) < fx) return hi;
    return x;
}

}  // namespace polcoul
