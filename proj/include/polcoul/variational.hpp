#pragma once

#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "polcoul/bessel.hpp"
#include "polcoul/errors.hpp"
#include "polcoul/minimize.hpp"
#include "polcoul/quadrature.hpp"

namespace polcoul {

// Closed form of the trial-state normalization integral
//   int_0^inf exp(-2 alpha / r - 2 kappa r) r^2 dr
//     = 2 (alpha/kappa)^(3/2) K_3(4 sqrt(alpha kappa)).
// Any prefactor of the trial function is applied by the caller.
inline double norm_integral(double alpha, double kappa) {
    if (!(alpha > 0.0 && kappa > 0.0))
        throw std::domain_error("norm_integral: need alpha > 0 and kappa > 0");
    const double x = 4.0 * std::sqrt(alpha * kappa);
    return 2.0 * std::pow(alpha / kappa, 1.5) * bessel_k(3, x);
}

// Exponential trial profile C(r) = norm * exp(-alpha/r - kappa r).
struct TrialState {
    double alpha = 1.0;
    double kappa = 1.0;
    double norm = 1.0;
};

inline TrialState make_trial_state(double alpha, double kappa) {
    TrialState ts;
    ts.alpha = alpha;
    ts.kappa = kappa;
    ts.norm = 1.0 / std::sqrt(norm_integral(alpha, kappa));
    return ts;
}

inline double trial_wavefunction(double r, const TrialState& ts) {
    if (!(r > 0.0)) throw std::domain_error("trial_wavefunction: r must be positive");
    const double expo = -ts.alpha / r - ts.kappa * r;
    if (expo < -700.0) return 0.0;
    return ts.norm * std::exp(expo);
}

// Roots in eps of the Rayleigh-quotient condition
//   sqrt(a/k) K3(X) (a k - k^2 + eps^2 - 1) + a (2 eps - 1) K2(X) = 0,
//   X = 4 sqrt(a k),
// a quadratic with c2 = sqrt(a/k) K3, c1 = 2 a K2,
// c0 = sqrt(a/k) K3 (a k - k^2 - 1) - a K2. Empty optionals when the
// discriminant is negative. first = smaller root, second = larger root.
struct EnergyRoots {
    std::optional<double> eps1;
    std::optional<double> eps2;
};

inline EnergyRoots energy_roots(double kappa, double alpha) {
    if (!(alpha > 0.0 && kappa > 0.0))
        throw std::domain_error("energy_roots: need alpha > 0 and kappa > 0");
    const double x = 4.0 * std::sqrt(alpha * kappa);
    const double k3 = bessel_k(3, x);
    const double k2 = bessel_k(2, x);
    const double c2 = std::sqrt(alpha / kappa) * k3;
    const double c1 = 2.0 * alpha * k2;
    const double c0 = c2 * (alpha * kappa - kappa * kappa - 1.0) - alpha * k2;
    const double disc = c1 * c1 - 4.0 * c2 * c0;
    EnergyRoots out;
    if (disc < 0.0) return out;
    const double s = std::sqrt(disc);
    out.eps1 = (-c1 - s) / (2.0 * c2);
    out.eps2 = (-c1 + s) / (2.0 * c2);
    return out;
}

// Residual of the condition above at a given eps (back-substitution check).
inline double energy_equation_residual(double eps, double kappa, double alpha) {
    const double x = 4.0 * std::sqrt(alpha * kappa);
    return std::sqrt(alpha / kappa) * bessel_k(3, x) *
               (alpha * kappa - kappa * kappa + eps * eps - 1.0) +
           alpha * (2.0 * eps - 1.0) * bessel_k(2, x);
}

enum class RootBranch { root1, root2 };  // smaller / larger root by value

struct RootSample {
    double kappa = 0.0;
    std::optional<double> eps1;
    std::optional<double> eps2;
};

struct VariationalResult {
    double e_star = 0.0;
    double kappa_star = 0.0;
    bool boundary_minimum = false;
    std::vector<RootSample> root_curves;
};

inline std::vector<RootSample> sample_root_curves(double alpha, double lo, double hi,
                                                  int n) {
    std::vector<RootSample> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double k = lo + (hi - lo) * i / (n - 1.0);
        const EnergyRoots r = energy_roots(k, alpha);
        out.push_back({k, r.eps1, r.eps2});
    }
    return out;
}

// Ritz step: minimize the chosen root branch over kappa. The curve is first
// sampled on a uniform grid to bracket the minimum (and to report the
// root curves), then the bracket is refined by golden-section search.
inline VariationalResult minimize_root(double alpha, RootBranch branch,
                                       std::pair<double, double> kappa_range,
                                       int grid_n = 600) {
    if (!(alpha > 0.0))
        throw std::domain_error("minimize_root: alpha must be positive");
    const auto [lo, hi] = kappa_range;
    if (!(lo > 0.0 && hi > lo))
        throw std::invalid_argument("minimize_root: bad kappa range");

    VariationalResult res;
    res.root_curves = sample_root_curves(alpha, lo, hi, grid_n);

    auto pick = [&](const RootSample& s) {
        return branch == RootBranch::root1 ? s.eps1 : s.eps2;
    };
    int best = -1;
    for (int i = 0; i < grid_n; ++i) {
        const auto v = pick(res.root_curves[i]);
        if (!v) continue;
        if (best < 0 || *v < *pick(res.root_curves[best])) best = i;
    }
    if (best < 0)
        throw no_root_error("minimize_root: branch has no real roots on the range");

    const double cell = (hi - lo) / (grid_n - 1.0);
    const double a = std::max(lo, res.root_curves[best].kappa - cell);
    const double b = std::min(hi, res.root_curves[best].kappa + cell);
    auto objective = [&](double k) {
        const EnergyRoots r = energy_roots(k, alpha);
        const auto v = branch == RootBranch::root1 ? r.eps1 : r.eps2;
        return v ? *v : std::numeric_limits<double>::quiet_NaN();
    };
    const MinimizeResult m = golden_section(objective, a, b, 1e-7);
    res.kappa_star = m.x;
    res.e_star = m.f;
    res.boundary_minimum = (best == 0 || best == grid_n - 1) &&
                           (std::abs(m.x - lo) < 2.0 * cell || std::abs(hi - m.x) < 2.0 * cell);
    return res;
}

}  // namespace polcoul
