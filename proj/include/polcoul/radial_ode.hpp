#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include "polcoul/errors.hpp"
#include "polcoul/ode.hpp"
#include "polcoul/params.hpp"
#include "polcoul/rootfind.hpp"

namespace polcoul {

// Value/slope pair used to seed the radial integration.
struct BoundaryData {
    double value = 0.0;
    double slope = 0.0;
};

// Decaying branch near the origin where the polarizability term dominates:
// f = (1/(2 alpha)) exp(-alpha/r) r, an exact solution of f'' = (alpha^2/r^4) f.
inline BoundaryData asymptotic_origin(double r, double alpha) {
    if (!(alpha > 0.0))
        throw std::domain_error("asymptotic_origin: decaying branch needs alpha > 0");
    if (!(r > 0.0)) throw std::domain_error("asymptotic_origin: r must be positive");
    const double expo = -alpha / r;
    if (expo < -700.0) return {0.0, 0.0};
    const double w = std::exp(expo) / (2.0 * alpha);
    return {w * r, w * (1.0 + alpha / r)};
}

// Decaying branch at large r: f = exp(-kappa r)/(2 kappa r), kappa = sqrt(1-e^2).
inline BoundaryData asymptotic_infinity(double r, double e) {
    if (!(std::abs(e) < 1.0))
        throw std::domain_error("asymptotic_infinity: need |e| < 1");
    if (!(r > 0.0)) throw std::domain_error("asymptotic_infinity: r must be positive");
    const double kap = std::sqrt(1.0 - e * e);
    const double expo = -kap * r;
    if (expo < -700.0) return {0.0, 0.0};
    const double w = std::exp(expo) / (2.0 * kap * r);
    return {w, -w * (kap + 1.0 / r)};
}

enum class Direction { outward, inward };

// Radial profile f(r) = r C(r) with derivative values on the solver's grid.
struct RadialSolution {
    std::vector<double> grid;  // strictly increasing, all positive
    std::vector<double> f;
    std::vector<double> df;
    double e = 0.0;
};

// Integrate f'' = -P^2(r) f across r_span starting from explicit boundary
// data at the travel origin (r_span.first for outward, r_span.second for
// inward). The grid is the solver's accepted-step sequence, stored ascending.
inline RadialSolution integrate_radial_from(const PhysicalParams& p, double e,
                                            std::pair<double, double> r_span,
                                            Direction dir, const BoundaryData& init,
                                            const OdeOptions& opt = {}) {
    validate(p);
    const auto [r_lo, r_hi] = r_span;
    if (!(r_lo > 0.0 && r_hi > r_lo))
        throw std::invalid_argument("integrate_radial_from: need 0 < r_min < r_max");

    PhysicalParams q = p;
    q.epsilon = e * p.mass;
    const DerivedParams d = derive(q);
    auto rhs = [&](double r, const std::array<double, 2>& y) -> std::array<double, 2> {
        const double inv = 1.0 / r;
        const double p2 = -d.K2 + (2.0 * q.epsilon * q.alpha) * inv - d.J2 * inv * inv +
                          d.Sigma2 * inv * inv * inv * inv;
        return {y[1], -p2 * y[0]};
    };

    const double start = dir == Direction::outward ? r_lo : r_hi;
    const double stop = dir == Direction::outward ? r_hi : r_lo;
    const OdeTrace<2> trace =
        integrate_dp5<2>(rhs, start, stop, {init.value, init.slope}, opt);

    RadialSolution sol;
    sol.e = e;
    const std::size_t n = trace.t.size();
    sol.grid.resize(n);
    sol.f.resize(n);
    sol.df.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t k = dir == Direction::outward ? i : n - 1 - i;
        sol.grid[i] = trace.t[k];
        sol.f[i] = trace.y[k][0];
        sol.df[i] = trace.y[k][1];
    }
    return sol;
}

// Same, seeded from the decaying asymptotic branch at the travel origin.
inline RadialSolution integrate_radial(const PhysicalParams& p, double e,
                                       std::pair<double, double> r_span, Direction dir,
                                       const OdeOptions& opt = {}) {
    const BoundaryData init = dir == Direction::outward
                                  ? asymptotic_origin(r_span.first, p.alpha)
                                  : asymptotic_infinity(r_span.second, e);
    return integrate_radial_from(p, e, r_span, dir, init, opt);
}

// Integration window for a bound-state candidate at energy e: both tails are
// pushed ~e^-30 below the peak.
inline std::pair<double, double> default_span(const PhysicalParams& p, double e) {
    const double kap = std::sqrt(std::max(1e-12, 1.0 - e * e));
    return {p.alpha / 30.0, 30.0 / kap};
}

// Log-derivative mismatch of the outward and inward decaying solutions at the
// matching radius; changes sign across an eigenvalue.
inline double matching_defect(const PhysicalParams& p, double e, double match_r,
                              const OdeOptions& opt = {}) {
    const auto [r_lo, r_hi] = default_span(p, e);
    if (!(match_r > r_lo && match_r < r_hi))
        throw std::invalid_argument("matching_defect: match point outside span");
    const RadialSolution out =
        integrate_radial(p, e, {r_lo, match_r}, Direction::outward, opt);
    const RadialSolution in =
        integrate_radial(p, e, {match_r, r_hi}, Direction::inward, opt);
    const double fo = out.f.back(), dfo = out.df.back();
    const double fi = in.f.front(), dfi = in.df.front();
    return dfo / fo - dfi / fi;
}

// Shooting eigenvalue search: root of the matching defect inside e_bracket.
inline double shoot_eigenvalue(const PhysicalParams& p, std::pair<double, double> e_bracket,
                               double match_r, const OdeOptions& opt = {}) {
    auto defect = [&](double e) { return matching_defect(p, e, match_r, opt); };
    RootOptions ropt;
    ropt.bisect_width = 1e-3;
    ropt.xtol = 1e-8;
    return find_root_bracketed(defect, e_bracket.first, e_bracket.second, ropt);
}

// Default matching radius: the trial-function peak sqrt(alpha/kappa) at the
// bracket midpoint energy.
inline double shoot_eigenvalue(const PhysicalParams& p, std::pair<double, double> e_bracket,
                               const OdeOptions& opt = {}) {
    const double em = 0.5 * (e_bracket.first + e_bracket.second);
    const double kap = std::sqrt(std::max(1e-12, 1.0 - em * em));
    return shoot_eigenvalue(p, e_bracket, std::sqrt(p.alpha / kap), opt);
}

// All 15 radial component profiles on the solution grid.
struct FieldComponents {
    std::vector<std::complex<double>> C, C0, C1, C2, C3;
    std::vector<std::complex<double>> Phi0, Phi1, Phi2, Phi3;
    std::vector<std::complex<double>> E1, E2, E3, H1, H2, H3;
};

// Rebuild every component from the scalar profile C = f/r:
//   Phi0 = -i (eps + alpha/r) C / m       Phi1 = Phi3 = -(nu/r) C / m
//   Phi2 = C' / m                         nu = sqrt(j(j+1)/2)
//   E1 = E3 = 0                           E2 = s (-i alpha / (m^2 r^2)) C
//   H1 = H2 = H3 = 0
//   C0 = [-i (eps + alpha/r) C + s i alpha sigma C' / (m^2 r^2)] / m
//   C1 = C3 = -(nu/r) C / m
//   C2 = [C' + s sigma alpha (eps + alpha/r) C / (m^2 r^2)] / m
// The mass entering these first-order relations is passed explicitly; s is
// the overall +-1 of the E/H block.
inline FieldComponents reconstruct_components(const RadialSolution& sol,
                                              const PhysicalParams& p, double mass_m,
                                              int pm_sign) {
    if (mass_m == 0.0)
        throw std::domain_error("reconstruct_components: mass parameter must be nonzero");
    const double s = pm_sign >= 0 ? 1.0 : -1.0;
    const double eps = sol.e * p.mass;
    const double nu = std::sqrt(0.5 * p.j * (p.j + 1));
    const double m2 = mass_m * mass_m;
    const std::complex<double> I(0.0, 1.0);

    const std::size_t n = sol.grid.size();
    FieldComponents fc;
    for (auto* v : {&fc.C, &fc.C0, &fc.C1, &fc.C2, &fc.C3, &fc.Phi0, &fc.Phi1, &fc.Phi2,
                    &fc.Phi3, &fc.E1, &fc.E2, &fc.E3, &fc.H1, &fc.H2, &fc.H3})
        v->resize(n);

    for (std::size_t i = 0; i < n; ++i) {
        const double r = sol.grid[i];
        if (r < 1e-12)
            throw std::domain_error("reconstruct_components: grid point below 1e-12");
        const double c = sol.f[i] / r;
        const double cp = sol.df[i] / r - sol.f[i] / (r * r);
        const double coul = eps + p.alpha / r;

        fc.C[i] = c;
        fc.Phi0[i] = -I * coul * c / mass_m;
        fc.Phi1[i] = -(nu / r) * c / mass_m;
        fc.Phi3[i] = fc.Phi1[i];
        fc.Phi2[i] = cp / mass_m;
        fc.E1[i] = 0.0;
        fc.E3[i] = 0.0;
        fc.E2[i] = s * (-I * p.alpha / (m2 * r * r)) * c;
        fc.H1[i] = 0.0;
        fc.H2[i] = 0.0;
        fc.H3[i] = 0.0;
        fc.C0[i] = (-I * coul * c + s * I * p.alpha * p.sigma * cp / (m2 * r * r)) / mass_m;
        fc.C1[i] = -(nu / r) * c / mass_m;
        fc.C3[i] = fc.C1[i];
        fc.C2[i] = (cp + s * p.sigma * p.alpha * coul * c / (m2 * r * r)) / mass_m;
    }
    return fc;
}

}  // namespace polcoul
