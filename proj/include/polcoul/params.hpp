#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

namespace polcoul {

// Physical inputs of the radial problem, in natural units (hbar = c = 1).
// epsilon is the energy, mass the particle mass M, alpha the Coulomb
// coupling, j the angular quantum number and sigma the sign/strength of the
// polarizability term sigma*alpha^2/(M^2 r^4).
struct PhysicalParams {
    double epsilon = 0.0;
    double mass = 1.0;
    double alpha = 1.0;
    int j = 0;
    double sigma = -1.0;

    // dimensionless energy e = epsilon/M
    double e() const { return epsilon / mass; }
};

inline void validate(const PhysicalParams& p) {
    if (!(p.mass > 0.0))
        throw std::invalid_argument("PhysicalParams: mass must be positive");
    if (p.j < 0)
        throw std::invalid_argument("PhysicalParams: j must be a non-negative integer");
    if (p.sigma == 0.0)
        throw std::invalid_argument("PhysicalParams: sigma must be nonzero");
    if (!(std::isfinite(p.epsilon) && std::isfinite(p.alpha) && std::isfinite(p.sigma)))
        throw std::invalid_argument("PhysicalParams: parameters must be finite");
}

// Composite symbols of the radial analysis.
//   K2     = M^2 - eps^2            (sign-carrying; positive for bound states)
//   J2     = j(j+1) - alpha^2       (signed; negative when alpha^2 > j(j+1))
//   Sigma2 = sigma alpha^2 / M^2
//   A      = principal fourth root of (eps^2 - M^2) * Sigma2
struct DerivedParams {
    double K2 = 0.0;
    double J2 = 0.0;
    double Sigma2 = 0.0;
    std::complex<double> A;
};

inline DerivedParams derive(const PhysicalParams& p) {
    validate(p);
    DerivedParams d;
    d.K2 = p.mass * p.mass - p.epsilon * p.epsilon;
    d.J2 = static_cast<double>(p.j) * (p.j + 1) - p.alpha * p.alpha;
    d.Sigma2 = p.sigma * p.alpha * p.alpha / (p.mass * p.mass);
    d.A = std::pow(std::complex<double>(-d.K2 * d.Sigma2, 0.0), 0.25);
    return d;
}

// Effective squared radial momentum
//   P^2(r) = (eps^2 - M^2) + 2 eps alpha / r - J2 / r^2 + Sigma2 / r^4.
// Its positive zeros are the classical turning points.
inline double p_squared(double r, const PhysicalParams& p) {
    if (!(r > 0.0))
        throw std::domain_error("p_squared: r must be positive");
    const DerivedParams d = derive(p);
    const double inv = 1.0 / r;
    return -d.K2 + (2.0 * p.epsilon * p.alpha) * inv - d.J2 * inv * inv +
           d.Sigma2 * inv * inv * inv * inv;
}

// Same momentum with the epsilon of p replaced by the dimensionless energy e
// (eps = e*M); used when scanning energies at fixed couplings.
inline double p_squared_at(double r, double e, const PhysicalParams& p) {
    PhysicalParams q = p;
    q.epsilon = e * p.mass;
    return p_squared(r, q);
}

}  // namespace polcoul
