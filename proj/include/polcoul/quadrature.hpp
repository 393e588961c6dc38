#pragma once

#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "polcoul/errors.hpp"

namespace polcoul {

namespace detail_quad {

// 7/15-point Gauss-Kronrod pair on [-1, 1]; column layout {node, G7 w, K15 w}.
inline constexpr double kGK15[8][3] = {
    {0.000000000000000, 0.417959183673469, 0.209482141084728},
    {0.405845151377397, 0.381830050505119, 0.190350578064785},
    {0.741531185599394, 0.279705391489277, 0.140653259715525},
    {0.949107912342759, 0.129484966168870, 0.063092092629979},
    {0.207784955007898, 0.0, 0.204432940075298},
    {0.586087235467691, 0.0, 0.169004726639267},
    {0.864864423359769, 0.0, 0.104790010322250},
    {0.991455371120813, 0.0, 0.022935322010529},
};

template <class F>
std::pair<double, double> gk15(F&& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double f0 = f(mid);
    double g7 = kGK15[0][1] * f0;
    double k15 = kGK15[0][2] * f0;
    for (int i = 1; i < 8; ++i) {
        const double dx = half * kGK15[i][0];
        const double fi = f(mid + dx) + f(mid - dx);
        g7 += kGK15[i][1] * fi;
        k15 += kGK15[i][2] * fi;
    }
    g7 *= half;
    k15 *= half;
    return {k15, std::abs(k15 - g7)};
}

struct Segment {
    double a, b, value, error;
};

}  // namespace detail_quad

// Globally adaptive Gauss-Kronrod quadrature with relative tolerance tol.
// hi may be +infinity: the tail is folded onto (0, 1] by the exponential map
// r = lo - ln(t), which turns exponentially decaying integrands into smooth
// or mildly endpoint-singular ones that the subdivision resolves. Nodes are
// strictly interior, so integrable endpoint singularities are allowed.
template <class F>
double adaptive_quadrature(F&& f, double lo, double hi, double tol,
                           int max_segments = 4000) {
    if (!(tol > 0.0)) throw std::invalid_argument("adaptive_quadrature: tol must be positive");

    std::vector<detail_quad::Segment> segs;
    segs.reserve(256);

    auto run = [&](auto&& g, double a, double b) -> double {
        auto [v, e] = detail_quad::gk15(g, a, b);
        segs.push_back({a, b, v, e});
        double total = v, err = e;
        while (err > tol * std::max(std::abs(total), 1e-300)) {
            if (static_cast<int>(segs.size()) >= max_segments)
                throw convergence_error("adaptive_quadrature: refinement budget exhausted");
            // split the segment with the largest error estimate
            std::size_t worst = 0;
            for (std::size_t i = 1; i < segs.size(); ++i)
                if (segs[i].error > segs[worst].error) worst = i;
            const detail_quad::Segment s = segs[worst];
            const double m = 0.5 * (s.a + s.b);
            if (!(m > s.a && m < s.b))
                throw convergence_error("adaptive_quadrature: interval collapsed below resolution");
            auto [v1, e1] = detail_quad::gk15(g, s.a, m);
            auto [v2, e2] = detail_quad::gk15(g, m, s.b);
            segs[worst] = {s.a, m, v1, e1};
            segs.push_back({m, s.b, v2, e2});
            total += v1 + v2 - s.value;
            err += e1 + e2 - s.error;
            if (err < 0.0) {  // recompute drifted error sum
                err = 0.0;
                for (const auto& sg : segs) err += sg.error;
            }
        }
        return total;
    };

    if (std::isinf(hi)) {
        auto mapped = [&](double t) { return f(lo - std::log(t)) / t; };
        return run(mapped, 0.0, 1.0);
    }
    if (!(hi > lo)) throw std::invalid_argument("adaptive_quadrature: need hi > lo");
    return run(f, lo, hi);
}

}  // namespace polcoul
