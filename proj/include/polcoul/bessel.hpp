#pragma once

#include <cmath>
#include <stdexcept>

#include "polcoul/errors.hpp"

namespace polcoul {

namespace detail_bessel {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

// K0, K1 for 0 < x <= 2 from the ascending series
//   K0 = -(ln(x/2) + g) I0(x) + sum_{k>=1} t^k/(k!)^2 H_k
//   K1 = 1/x + ln(x/2) I1(x) - (x/4) sum_{k>=0} [psi(k+1)+psi(k+2)] t^k/(k!(k+1)!)
// with t = x^2/4; converges to machine precision in under 30 terms.
inline void k0k1_series(double x, double& k0, double& k1) {
    const double t = 0.25 * x * x;
    const double lg = std::log(0.5 * x);

    double term = 1.0, i0 = 1.0, s0 = 0.0, hk = 0.0;
    for (int k = 1; k < 80; ++k) {
        term *= t / (static_cast<double>(k) * k);
        hk += 1.0 / k;
        i0 += term;
        s0 += term * hk;
        if (term * (hk + 1.0) < 1e-18 * i0) break;
    }
    k0 = -(lg + kEulerGamma) * i0 + s0;

    term = 1.0;
    double i1s = 1.0;
    double ps1 = -kEulerGamma;        // psi(1)
    double ps2 = -kEulerGamma + 1.0;  // psi(2)
    double s1 = ps1 + ps2;
    for (int k = 1; k < 80; ++k) {
        term *= t / (static_cast<double>(k) * (k + 1));
        ps1 += 1.0 / k;
        ps2 += 1.0 / (k + 1);
        i1s += term;
        s1 += (ps1 + ps2) * term;
        if (term * (ps1 + ps2 + 1.0) < 1e-18 * i1s) break;
    }
    const double i1 = 0.5 * x * i1s;
    k1 = 1.0 / x + lg * i1 - 0.25 * x * s1;
}

// K0, K1 for x > 2 via the Thompson-Barnett continued fraction CF2
// (Steed's algorithm at order mu = 0); accurate to machine precision and,
// unlike the truncated large-x expansion, uniformly so down to x = 2.
inline void k0k1_cf2(double x, double& k0, double& k1) {
    constexpr double eps = 1e-16;
    const double a1 = 0.25;
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d, delh = d;
    double q1 = 0.0, q2 = 1.0;
    double q = a1, c = a1;
    double a = -a1;
    double s = 1.0 + q * delh;
    for (int i = 2; i < 10000; ++i) {
        a -= 2.0 * (i - 1);
        c = -a * c / i;
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::abs(dels / s) < eps) break;
    }
    h = a1 * h;
    k0 = std::sqrt(M_PI / (2.0 * x)) * std::exp(-x) / s;
    k1 = k0 * (x + 0.5 - h) / x;
}

}  // namespace detail_bessel

// Modified Bessel function of the second kind K_n(x) for integer n >= 0,
// built from K0/K1 by the (stable) upward three-term recurrence.
inline double bessel_k(int n, double x) {
    if (!(x > 0.0)) throw std::domain_error("bessel_k: x must be positive");
    if (n < 0) throw std::domain_error("bessel_k: order must be non-negative");
    double k0, k1;
    if (x <= 2.0)
        detail_bessel::k0k1_series(x, k0, k1);
    else
        detail_bessel::k0k1_cf2(x, k0, k1);
    if (n == 0) return k0;
    if (n == 1) return k1;
    double km = k0, kc = k1;
    for (int m = 1; m < n; ++m) {
        const double kn = km + (2.0 * m / x) * kc;
        km = kc;
        kc = kn;
    }
    return kc;
}

}  // namespace polcoul
