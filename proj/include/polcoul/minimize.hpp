#pragma once

#include <cmath>
#include <limits>

#include "polcoul/errors.hpp"

namespace polcoul {

struct MinimizeResult {
    double x = 0.0;
    double f = 0.0;
    bool at_boundary = false;  // minimizer pinned to an endpoint of [lo, hi]
};

// Golden-section search for the minimum of a unimodal function on [lo, hi].
// Evaluations returning NaN are treated as +inf so the search can skirt
// regions where the objective is undefined.
template <class F>
MinimizeResult golden_section(F&& f, double lo, double hi, double xtol) {
    constexpr double invphi = 0.6180339887498949;
    auto safe = [&](double x) {
        const double v = f(x);
        return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
    };
    double a = lo, b = hi;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = safe(x1), f2 = safe(x2);
    while (b - a > xtol) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = safe(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = safe(x2);
        }
    }
    MinimizeResult res;
    res.x = f1 <= f2 ? x1 : x2;
    res.f = std::min(f1, f2);
    res.at_boundary = (res.x - lo <= 2.0 * xtol) || (hi - res.x <= 2.0 * xtol);
    return res;
}

}  // namespace polcoul
