#pragma once

#include <cmath>
#include <stdexcept>

#include "polcoul/errors.hpp"
#include "polcoul/params.hpp"
#include "polcoul/rootfind.hpp"

namespace polcoul {

// Factored shape of the bare-centrifugal quartic at the bifurcation energy:
// (r - r0)^2 ((r - a)^2 + b2), with e the dimensionless energy eps/M.
struct DoubleRootGeometry {
    double r0 = 0.0;
    double a = 0.0;
    double b2 = 0.0;
    double e = 0.0;
};

// Radicand shared by the closed forms and the residual.
inline double bifurcation_radicand(double e, int j, double alpha) {
    return 8.0 * (e * e - 1.0) * j * (1 + j) + 9.0 * e * e * alpha * alpha;
}

// Lower bound on |e| for the double root to sit on the real axis.
inline double reality_bound(int j, double alpha) {
    if (j < 0) throw std::domain_error("reality_bound: j must be non-negative");
    const double n = 8.0 * j + 8.0 * j * j;
    return std::sqrt(n / (n + 9.0 * alpha * alpha));
}

// Closed forms for the double root r0 and the complex pair a +- i b.
inline DoubleRootGeometry double_root_geometry(double e, const PhysicalParams& p) {
    validate(p);
    if (!(std::abs(e) < 1.0))
        throw std::domain_error("double_root_geometry: need |e| < 1");
    const double rad = bifurcation_radicand(e, p.j, p.alpha);
    if (rad < 0.0)
        throw std::domain_error("double_root_geometry: negative radicand, r0 not real");
    const double M = p.mass;
    const double em1 = e * e - 1.0;
    DoubleRootGeometry g;
    g.e = e;
    g.r0 = -(3.0 * e * p.alpha + std::sqrt(rad)) / (4.0 * em1 * M);
    g.a = (M * (g.r0 - e * e * g.r0) - e * p.alpha) / (em1 * M);
    g.b2 = -(e * p.alpha * (em1 * M * g.r0 + e * p.alpha)) / (em1 * em1 * M * M);
    if (g.b2 < -1e-12 * std::max(1.0, g.r0 * g.r0))
        throw std::domain_error("double_root_geometry: configuration has four real roots (b^2 < 0)");
    if (g.b2 < 0.0) g.b2 = 0.0;
    return g;
}

// Left-hand side of the scalar bifurcation condition obtained by eliminating
// (r0, a, b) from the double-root system; its zero in e is the lower boundary
// of the bound-state energies.
inline double bifurcation_residual(double e, const PhysicalParams& p) {
    const double al = p.alpha;
    const double j = static_cast<double>(p.j);
    const double s = p.sigma;
    const double em1 = e * e - 1.0;
    const double rad = bifurcation_radicand(e, p.j, al);
    if (rad < 0.0)
        throw std::domain_error("bifurcation_residual: negative radicand");
    const double sq = std::sqrt(rad);
    return -16.0 * em1 * em1 * j * j * j - 8.0 * em1 * em1 * j * j * j * j -
           27.0 * std::pow(e, 4) * std::pow(al, 4) - 9.0 * std::pow(e, 3) * std::pow(al, 3) * sq -
           4.0 * e * em1 * j * al * (9.0 * e * al + 2.0 * sq) -
           4.0 * em1 * j * j * (-2.0 + e * e * (2.0 + 9.0 * al * al) + 2.0 * e * al * sq) +
           32.0 * em1 * em1 * em1 * al * al * s;
}

// Bifurcation energy: the root of the residual inside the bracket.
// Refinement is bisection to width 1e-4 followed by secant polish.
inline double e_min(const PhysicalParams& p, double lo, double hi) {
    validate(p);
    if (!(lo < hi))
        throw std::invalid_argument("e_min: empty bracket");
    auto f = [&](double e) { return bifurcation_residual(e, p); };
    RootOptions opt;
    opt.bisect_width = 1e-4;
    opt.xtol = 1e-15;  // full precision so the quartic double root stays merged
    return find_root_bracketed(f, lo, hi, opt);
}

// Default bracket: positive-energy branch between the reality bound and the
// mass shell. Pass sign=-1 to search the mirrored negative-energy branch.
inline double e_min(const PhysicalParams& p, int sign = +1) {
    const double rb = reality_bound(p.j, p.alpha);
    const double lo = rb + 1e-6;
    const double hi = 1.0 - 1e-6;
    if (!(lo < hi))
        throw no_root_error("e_min: reality bound leaves no admissible bracket");
    if (sign >= 0) return e_min(p, lo, hi);
    return e_min(p, -hi, -lo);
}

}  // namespace polcoul
