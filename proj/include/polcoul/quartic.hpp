#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "polcoul/errors.hpp"
#include "polcoul/params.hpp"

namespace polcoul {

using cplx = std::complex<double>;

// r^2-coefficient convention of the turning-point quartic.
//   section2: -J2 r^2 = -(j(j+1) - alpha^2) r^2  (keeps the Coulomb shift)
//   section4: -j(j+1) r^2                        (bare centrifugal term)
enum class Convention { section2, section4 };

inline const char* to_string(Convention c) {
    return c == Convention::section2 ? "section2" : "section4";
}

// Qualitative motion regime, determined by the signs of (eps^2 - M^2, Sigma2).
enum class Regime { I, II, III, IV };

inline const char* to_string(Regime r) {
    switch (r) {
        case Regime::I: return "I";
        case Regime::II: return "II";
        case Regime::III: return "III";
        default: return "IV";
    }
}

struct QuarticCoeffs {
    double c4 = 0, c3 = 0, c2 = 0, c1 = 0, c0 = 0;

    double eval(double r) const { return (((c4 * r + c3) * r + c2) * r + c1) * r + c0; }
    cplx eval(cplx z) const { return (((c4 * z + c3) * z + c2) * z + c1) * z + c0; }
    cplx deriv(cplx z) const { return ((4.0 * c4 * z + 3.0 * c3) * z + 2.0 * c2) * z + c1; }
    double max_coeff() const {
        return std::max({std::abs(c4), std::abs(c3), std::abs(c2), std::abs(c1), std::abs(c0)});
    }
};

// Numerator of P^2(r): (eps^2 - M^2) r^4 + 2 eps alpha r^3 + c2 r^2 + Sigma2,
// with c2 chosen by the convention.
inline QuarticCoeffs turning_quartic(const PhysicalParams& p, Convention conv) {
    const DerivedParams d = derive(p);
    QuarticCoeffs q;
    q.c4 = -d.K2;
    q.c3 = 2.0 * p.epsilon * p.alpha;
    q.c2 = conv == Convention::section2 ? -d.J2 : -static_cast<double>(p.j) * (p.j + 1);
    q.c1 = 0.0;
    q.c0 = d.Sigma2;
    return q;
}

// All four roots via eigenvalues of the companion matrix, each polished by one
// Newton step (robust near the double roots of the bifurcation configuration,
// where the closed-form resolvent is ill-conditioned). Sorted by (Re, Im).
inline std::array<cplx, 4> solve_quartic(const QuarticCoeffs& q) {
    if (q.c4 == 0.0)
        throw degenerate_error("solve_quartic: leading coefficient is zero");
    const double a3 = q.c3 / q.c4, a2 = q.c2 / q.c4, a1 = q.c1 / q.c4, a0 = q.c0 / q.c4;

    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    m(0, 3) = -a0;
    m(1, 3) = -a1;
    m(2, 3) = -a2;
    m(3, 3) = -a3;
    m(1, 0) = m(2, 1) = m(3, 2) = 1.0;

    Eigen::EigenSolver<Eigen::Matrix4d> es(m, /*computeEigenvectors=*/false);
    std::array<cplx, 4> roots;
    for (int i = 0; i < 4; ++i) {
        cplx z = es.eigenvalues()[i];
        const cplx dq = q.deriv(z);
        if (std::abs(dq) > 0.0) {
            const cplx step = q.eval(z) / dq;
            if (std::isfinite(step.real()) && std::isfinite(step.imag())) z -= step;
        }
        roots[i] = z;
    }

    // Real coefficients: force conjugate symmetry so downstream pairing is
    // exact. Each root joins at most one pair (nearly coincident pairs would
    // otherwise cross-pair and cancel their imaginary parts).
    std::array<bool, 4> paired{};
    for (int i = 0; i < 4; ++i) {
        if (paired[i] || roots[i].imag() == 0.0) continue;
        int best = -1;
        double best_gap = 1e-6 * std::max(1.0, std::abs(roots[i]));
        for (int k = i + 1; k < 4; ++k) {
            if (paired[k]) continue;
            const double gap = std::abs(roots[k] - std::conj(roots[i]));
            if (gap < best_gap) {
                best_gap = gap;
                best = k;
            }
        }
        if (best >= 0) {
            const cplx mean(0.5 * (roots[i].real() + roots[best].real()),
                            0.5 * (roots[i].imag() - roots[best].imag()));
            roots[i] = mean;
            roots[best] = std::conj(mean);
            paired[i] = paired[best] = true;
        }
    }

    std::sort(roots.begin(), roots.end(), [](const cplx& a, const cplx& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return roots;
}

// Half-open at +infinity: hi == +inf means the motion extends to infinity.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool unbounded() const { return std::isinf(hi); }
};

struct QuarticAnalysis {
    std::array<cplx, 4> roots;
    Regime regime = Regime::I;
    std::vector<Interval> motion_intervals;
    Convention convention = Convention::section2;
    QuarticCoeffs coeffs;
};

// Two real roots closer than this are reported as a double root; a conjugate
// pair with |Im| below it collapses to a real double root.
inline double double_root_threshold(double r) { return 1e-6 * std::max(1.0, std::abs(r)); }

namespace detail {

// Positive real roots; a conjugate pair whose |Im| is below half the double
// root threshold counts as two coincident real roots.
inline std::vector<double> positive_roots_merged(const std::array<cplx, 4>& roots) {
    std::vector<double> pos;
    for (const cplx& z : roots)
        if (std::abs(z.imag()) <= 0.5 * double_root_threshold(std::abs(z)) && z.real() > 0.0)
            pos.push_back(z.real());
    std::sort(pos.begin(), pos.end());
    return pos;
}

inline std::vector<Interval> intervals_from_roots(const QuarticCoeffs& q,
                                                  const std::vector<double>& pos) {
    // Segment (0, inf) by the positive roots and keep segments where the
    // quartic (same sign as P^2 for r > 0) is positive at a sample point.
    std::vector<double> bounds;
    bounds.push_back(0.0);
    for (double r : pos) bounds.push_back(r);
    const double inf = std::numeric_limits<double>::infinity();
    bounds.push_back(inf);

    std::vector<Interval> out;
    for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
        const double lo = bounds[i], hi = bounds[i + 1];
        double sample;
        if (std::isinf(hi))
            sample = lo + std::max(1.0, lo);
        else if (lo == 0.0)
            sample = 0.5 * hi;
        else
            sample = 0.5 * (lo + hi);
        if (hi - lo < 4.0 * double_root_threshold(sample)) continue;  // degenerate gap
        if (q.eval(sample) > 0.0) {
            if (!out.empty() && lo - out.back().hi <= 4.0 * double_root_threshold(lo))
                out.back().hi = hi;  // double root inside an allowed region
            else
                out.push_back({lo, hi});
        }
    }
    return out;
}

}  // namespace detail

inline Regime classify_regime(const DerivedParams& d) {
    const bool bound = d.K2 > 0.0;  // eps^2 - M^2 < 0
    const bool sig_neg = d.Sigma2 < 0.0;
    if (bound) return sig_neg ? Regime::I : Regime::II;
    return sig_neg ? Regime::III : Regime::IV;
}

// Solve the turning-point quartic, classify the regime and derive the
// classically allowed intervals of r where P^2 > 0.
inline QuarticAnalysis turning_points(const PhysicalParams& p, Convention conv) {
    const DerivedParams d = derive(p);
    if (std::abs(d.K2) < 1e-12 * p.mass * p.mass)
        throw degenerate_error("turning_points: eps^2 == M^2 (massless shell), quartic degenerates");

    QuarticAnalysis qa;
    qa.convention = conv;
    qa.coeffs = turning_quartic(p, conv);
    qa.roots = solve_quartic(qa.coeffs);
    qa.regime = classify_regime(d);
    qa.motion_intervals =
        detail::intervals_from_roots(qa.coeffs, detail::positive_roots_merged(qa.roots));
    return qa;
}

inline std::vector<double> positive_real_roots(const QuarticAnalysis& qa) {
    return detail::positive_roots_merged(qa.roots);
}

// Double positive root, if the spectrum contains one within the detection
// threshold (the bifurcation configuration).
inline std::optional<double> double_positive_root(const QuarticAnalysis& qa) {
    std::vector<double> pos = detail::positive_roots_merged(qa.roots);
    for (std::size_t i = 0; i + 1 < pos.size(); ++i)
        if (pos[i + 1] - pos[i] < double_root_threshold(pos[i + 1]))
            return 0.5 * (pos[i] + pos[i + 1]);
    return std::nullopt;
}

// Normalized residuals of the four root/coefficient relations of the quartic:
//   e1 = -c3/c4,  e2 = c2/c4,  e3 = -c1/c4,  e4 = c0/c4
// against the elementary symmetric functions of the roots.
inline std::array<double, 4> vieta_residuals(const std::array<cplx, 4>& roots,
                                             const QuarticCoeffs& q) {
    const cplx r1 = roots[0], r2 = roots[1], r3 = roots[2], r4 = roots[3];
    const cplx s1 = r1 + r2 + r3 + r4;
    const cplx s2 = r1 * r2 + r1 * r3 + r1 * r4 + r2 * r3 + r2 * r4 + r3 * r4;
    const cplx s3 = r1 * r2 * r3 + r1 * r2 * r4 + r1 * r3 * r4 + r2 * r3 * r4;
    const cplx s4 = r1 * r2 * r3 * r4;
    const double lhs1 = -q.c3 / q.c4;
    const double lhs2 = q.c2 / q.c4;
    const double lhs3 = -q.c1 / q.c4;
    const double lhs4 = q.c0 / q.c4;
    return {std::abs(lhs1 - s1) / std::max(1.0, std::abs(lhs1)),
            std::abs(lhs2 - s2) / std::max(1.0, std::abs(lhs2)),
            std::abs(lhs3 - s3) / std::max(1.0, std::abs(lhs3)),
            std::abs(lhs4 - s4) / std::max(1.0, std::abs(lhs4))};
}

inline std::array<double, 4> vieta_residuals(const QuarticAnalysis& qa, const PhysicalParams& p) {
    return vieta_residuals(qa.roots, turning_quartic(p, qa.convention));
}

// Closed form for the remaining two roots given the outer turning points
// r3 < r4, for bound states (eps^2 < M^2). Returns the conjugate pair when
// the discriminant under the square root is negative.
inline std::pair<cplx, cplx> inner_roots_from_outer(double r3, double r4,
                                                    const PhysicalParams& p) {
    const DerivedParams d = derive(p);
    if (!(d.K2 > 0.0))
        throw std::domain_error("inner_roots_from_outer: requires eps^2 < M^2");
    if (!(r3 > 0.0 && r4 > r3))
        throw std::domain_error("inner_roots_from_outer: need 0 < r3 < r4");
    const double s = r3 + r4 - 2.0 * p.epsilon * p.alpha / d.K2;
    const double disc = s * s + 4.0 * d.Sigma2 / (d.K2 * r3 * r4);
    if (disc >= 0.0) {
        const double root = std::sqrt(disc);
        return {cplx(0.5 * (-s - root), 0.0), cplx(0.5 * (-s + root), 0.0)};
    }
    const double im = 0.5 * std::sqrt(-disc);
    return {cplx(-0.5 * s, -im), cplx(-0.5 * s, im)};
}

struct GridSpec {
    double r_max = 10.0;
    double step = 1e-3;
};

// Dense sign scan of P^2 on (0, r_max]; oracle for the root-based intervals.
// Interval endpoints are accurate to the grid resolution; a run reaching the
// last grid point is reported with hi == r_max.
inline std::vector<Interval> classify_brute_force(const PhysicalParams& p, const GridSpec& grid) {
    if (!(grid.r_max > 0.0 && grid.step > 0.0 && grid.step < grid.r_max))
        throw std::invalid_argument("classify_brute_force: bad grid");
    // Evaluate the quartic numerator (same sign as P^2 for r > 0, no 1/r^4
    // overflow near the origin).
    const QuarticCoeffs q = turning_quartic(p, Convention::section2);
    std::vector<Interval> out;
    bool inside = false;
    double start = 0.0, last = 0.0;
    for (double r = grid.step; r <= grid.r_max + 0.5 * grid.step; r += grid.step) {
        const bool pos = q.eval(r) > 0.0;
        if (pos && !inside) {
            inside = true;
            start = r;
        } else if (!pos && inside) {
            inside = false;
            out.push_back({start, last});
        }
        last = r;
    }
    if (inside) out.push_back({start, last});
    return out;
}

}  // namespace polcoul
