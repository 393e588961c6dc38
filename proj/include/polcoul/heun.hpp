#pragma once

#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include "polcoul/errors.hpp"
#include "polcoul/params.hpp"

namespace polcoul {

using cplx = std::complex<double>;

// Principal square root of Sigma2: positive real for Sigma2 > 0, +i|Sigma|
// for Sigma2 < 0.
inline cplx sigma_root(const DerivedParams& d) {
    return d.Sigma2 >= 0.0 ? cplx(std::sqrt(d.Sigma2), 0.0)
                           : cplx(0.0, std::sqrt(-d.Sigma2));
}

// Branch pair used by the Moebius map x(r) = (iAr + S)/(iAr - S).
//
// The map is meant to send r=0 to x=-1 and r=inf to x=+1 along the unit
// circle (Sigma2 > 0) or the real segment [-1, 1) (Sigma2 < 0). The circle
// case forces A real, so the frame carries |K2*Sigma2|^(1/4) rather than the
// principal fourth root of (eps^2-M^2)*Sigma2, and the segment case needs
// S = -i|Sigma| so that x = (Ar - |Sigma|)/(Ar + |Sigma|) stays pole-free on
// r > 0. The algebraic identities of the Heun reduction are insensitive to
// this choice; only the geometry of the x-image depends on it.
struct TransformFrame {
    double A = 0.0;  // real positive scale
    cplx S;          // signed square root of Sigma2
};

inline TransformFrame transform_frame(const DerivedParams& d) {
    TransformFrame fr;
    fr.A = std::pow(std::abs(d.K2 * d.Sigma2), 0.25);
    fr.S = d.Sigma2 >= 0.0 ? cplx(std::sqrt(d.Sigma2), 0.0)
                           : cplx(0.0, -std::sqrt(-d.Sigma2));
    return fr;
}

inline cplx x_of_r(double r, const DerivedParams& d) {
    if (!(r > 0.0)) throw std::domain_error("x_of_r: r must be positive");
    const TransformFrame fr = transform_frame(d);
    if (fr.A == 0.0) throw degenerate_error("x_of_r: A == 0 (alpha == 0 or eps^2 == M^2)");
    const cplx iar(0.0, fr.A * r);
    const cplx den = iar - fr.S;
    if (std::abs(den) < 1e-300 * std::max(1.0, fr.A * r))
        throw degenerate_error("x_of_r: transform singular (iAr == Sigma)");
    return (iar + fr.S) / den;
}

inline cplx r_of_x(const cplx& x, const DerivedParams& d) {
    const TransformFrame fr = transform_frame(d);
    if (fr.A == 0.0) throw degenerate_error("r_of_x: A == 0 (alpha == 0 or eps^2 == M^2)");
    if (std::abs(x - 1.0) < 1e-300)
        throw degenerate_error("r_of_x: x == 1 is the image of r = infinity");
    return (cplx(0.0, -1.0) * fr.S / fr.A) * (x + 1.0) / (x - 1.0);
}

// Exponent substitution f = (x+1)^B (x-1)^C exp(Dx/((x+1)(x-1))) F(x)
// with B = 1/2, C = -1/2 and D = plus/minus 4A.
struct SubstitutionParams {
    double B = 0.5;
    double C = -0.5;
    cplx D;
};

inline SubstitutionParams substitution_params(const DerivedParams& d, int sign) {
    if (std::abs(d.A) == 0.0)
        throw degenerate_error("substitution_params: A == 0");
    SubstitutionParams sp;
    sp.D = (sign >= 0 ? 4.0 : -4.0) * d.A;
    return sp;
}

// Parameters of the double confluent Heun form
//   H'' + [1/(x+1) + 1/(x-1) - mu/2(x+1)^2 - mu/2(x-1)^2] H'
//      + [beta x^2 + (gamma + 2 mu) x + delta] / ((x+1)^3 (x-1)^3) H = 0
// satisfying beta + delta = gamma.
struct HeunParams {
    cplx mu, beta, gamma, delta;
    int sign_choice = +1;
};

inline HeunParams heun_params(const PhysicalParams& p, int sign = +1) {
    const DerivedParams d = derive(p);
    if (std::abs(d.A) == 0.0)
        throw degenerate_error("heun_params: A == 0 (alpha == 0 or eps^2 == M^2)");
    const cplx is = cplx(0.0, 1.0) * sigma_root(d) / d.A;  // i Sigma / A
    const cplx w = 8.0 * p.epsilon * p.alpha * is;
    const cplx s = 1.0 + 4.0 * d.J2 - 8.0 * d.A * d.A;
    HeunParams h;
    h.sign_choice = sign >= 0 ? +1 : -1;
    h.mu = (sign >= 0 ? 8.0 : -8.0) * d.A;
    h.gamma = -2.0 * w;
    h.beta = -s - w;
    h.delta = s - w;
    return h;
}

inline double constraint_residual(const HeunParams& h) {
    const double scale = std::max({1.0, std::abs(h.beta), std::abs(h.delta), std::abs(h.gamma)});
    return std::abs(h.beta + h.delta - h.gamma) / scale;
}

// Pointwise comparison of the transformed-equation coefficient functions
// against the Heun-form coefficients with the mapping mu = 2D. Returns the
// maximum absolute mismatch over the samples (first- and zeroth-order terms).
inline double verify_heun_reduction(const PhysicalParams& p, int sign,
                                    std::span<const cplx> x_samples) {
    const DerivedParams d = derive(p);
    if (std::abs(d.A) == 0.0)
        throw degenerate_error("verify_heun_reduction: A == 0");
    const cplx A = d.A;
    const cplx D = (sign >= 0 ? 4.0 : -4.0) * A;
    const HeunParams h = heun_params(p, sign);
    const cplx ieas = cplx(0.0, 1.0) * p.epsilon * p.alpha * sigma_root(d);
    const cplx J2 = d.J2;

    // quadratic numerator of the transformed zeroth-order coefficient
    const cplx n2 = D * D * A - 8.0 * J2 * A - 2.0 * A - 16.0 * ieas;
    const cplx n1 = 8.0 * D * A - 32.0 * ieas;
    const cplx n0 = 2.0 * A - 16.0 * ieas - D * D * A + 8.0 * J2 * A;

    double worst = 0.0;
    for (const cplx& x : x_samples) {
        const cplx xp = x + 1.0, xm = x - 1.0;
        const cplx c1_direct =
            1.0 / xp + 1.0 / xm - D / (xp * xp) - D / (xm * xm);
        const cplx c1_heun =
            1.0 / xp + 1.0 / xm - h.mu / (2.0 * xp * xp) - h.mu / (2.0 * xm * xm);
        const cplx cube = xp * xp * xp * xm * xm * xm;
        const cplx c0_direct = ((n2 * x + n1) * x + n0) / (2.0 * A * cube);
        const cplx c0_heun = ((h.beta * x + (h.gamma + 2.0 * h.mu)) * x + h.delta) / cube;
        worst = std::max(worst, std::abs(c1_direct - c1_heun));
        worst = std::max(worst, std::abs(c0_direct - c0_heun));
    }
    return worst;
}

}  // namespace polcoul
