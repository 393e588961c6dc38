#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>

#include "polcoul/bifurcation.hpp"
#include "polcoul/quartic.hpp"

using namespace polcoul;
using Catch::Approx;

namespace {

const PhysicalParams kCanonical{0.0, 1.0, 1.0, 0, -1.0};  // j=0, sigma=-1, alpha=1, M=1

// coefficients of the monic quartic r^4 + c3 r^3 + c2 r^2 + c1 r + c0
// reconstructed from the factored double-root form
std::array<double, 4> expand_geometry(const DoubleRootGeometry& g) {
    const double q = g.a * g.a + g.b2;
    return {-2.0 * g.a - 2.0 * g.r0,                 // r^3
            q + 4.0 * g.a * g.r0 + g.r0 * g.r0,      // r^2
            -2.0 * g.r0 * (q + g.a * g.r0),          // r^1
            g.r0 * g.r0 * q};                        // r^0
}

}  // namespace

TEST_CASE("double_root_geometry: frozen values at the printed energy", "[bifurcation]") {
    const DoubleRootGeometry g = double_root_geometry(0.614659, kCanonical);
    CHECK(g.r0 == Approx(1.4818336967579473).epsilon(1e-10));
    CHECK(g.a == Approx(-0.49394456558598243).epsilon(1e-10));
    CHECK(g.b2 == Approx(0.4879624677438497).epsilon(1e-10));
}

TEST_CASE("double_root_geometry: j = 0 closed form for r0", "[bifurcation]") {
    for (double e : {0.3, 0.62, 0.9}) {
        for (double M : {1.0, 2.0}) {
            PhysicalParams p = kCanonical;
            p.mass = M;
            const DoubleRootGeometry g = double_root_geometry(e, p);
            CHECK(g.r0 == Approx(3.0 * e * p.alpha / (2.0 * (1.0 - e * e) * M)).epsilon(1e-12));
        }
    }
}

TEST_CASE("double_root_geometry: expansion reproduces the monic quartic", "[bifurcation]") {
    // the double-root system is overdetermined in (r0, a, b2); the closed
    // forms close it exactly only where the residual vanishes, i.e. at e_min
    const double e = e_min(kCanonical);
    const DoubleRootGeometry g = double_root_geometry(e, kCanonical);
    const auto got = expand_geometry(g);
    const double em1 = e * e - 1.0;
    // monic coefficients of the bare-centrifugal quartic over (e^2 - 1)
    const std::array<double, 4> want{
        2.0 * e * kCanonical.alpha / em1,
        0.0,  // j = 0 kills the r^2 term
        0.0,
        kCanonical.sigma * kCanonical.alpha * kCanonical.alpha / em1};
    for (int k = 0; k < 4; ++k)
        CHECK(std::abs(got[k] - want[k]) <= 1e-9 * std::max(1.0, std::abs(want[k])));

    // away from the root the r^3 and r^1 relations still hold by construction
    // (a solves the linear-sum equation, b2 solves 2 r0 (a^2 + b^2 + a r0) = 0)
    for (double eo : {0.3, 0.8}) {
        const DoubleRootGeometry go = double_root_geometry(eo, kCanonical);
        const auto g4 = expand_geometry(go);
        CHECK(g4[0] == Approx(2.0 * eo / (eo * eo - 1.0)).epsilon(1e-12));
        CHECK(std::abs(g4[2]) < 1e-12);
    }
}

TEST_CASE("double_root_geometry: domain errors", "[bifurcation]") {
    PhysicalParams p = kCanonical;
    p.j = 1;
    // radicand 8(e^2-1) j(j+1) + 9 e^2 alpha^2 < 0 below the reality bound
    CHECK_THROWS_AS(double_root_geometry(0.5, p), std::domain_error);
    CHECK_THROWS_AS(double_root_geometry(1.5, kCanonical), std::domain_error);
}

TEST_CASE("bifurcation_residual: hand values at j = 0", "[bifurcation]") {
    // simplifies to -54 e^4 - 32 (e^2 - 1)^3 for sigma = -1, alpha = 1
    CHECK(bifurcation_residual(1.0, kCanonical) == Approx(-54.0));
    CHECK(bifurcation_residual(0.0, kCanonical) == Approx(32.0));
    for (double e : {0.2, 0.5, 0.7, 0.95}) {
        const double simplified = -54.0 * std::pow(e, 4) - 32.0 * std::pow(e * e - 1.0, 3);
        CHECK(bifurcation_residual(e, kCanonical) == Approx(simplified).margin(1e-12));
    }
}

TEST_CASE("reality_bound values", "[bifurcation]") {
    CHECK(reality_bound(0, 1.0) == 0.0);
    CHECK(reality_bound(1, 1.0) == Approx(0.8));
    CHECK(reality_bound(1, 1e6) < 1e-5);
    CHECK(reality_bound(3, 1e6) < 1e-4);
}

TEST_CASE("e_min: canonical anchor", "[bifurcation]") {
    const double e = e_min(kCanonical, 0.1, 0.99);
    CHECK(e == Approx(0.614659).margin(1e-5));
    // residual self-check at the refined root
    CHECK(std::abs(-54.0 * std::pow(e, 4) - 32.0 * std::pow(e * e - 1.0, 3)) < 1e-10);
    // default bracket gives the same root
    CHECK(e_min(kCanonical) == Approx(e).margin(1e-10));
}

TEST_CASE("e_min: no root for sigma = +1", "[bifurcation]") {
    PhysicalParams p = kCanonical;
    p.sigma = +1.0;
    CHECK_THROWS_AS(e_min(p), no_root_error);
}

TEST_CASE("e_min: negative-energy branch has no root at canonical params", "[bifurcation]") {
    // with e < 0 the Coulomb term is repulsive and the j = 0 residual reduces
    // to +32 (1 - e^2)^3 > 0, so the search must report the absence
    CHECK(bifurcation_residual(-0.5, kCanonical) == Approx(32.0 * std::pow(0.75, 3)));
    CHECK_THROWS_AS(e_min(kCanonical, -1), no_root_error);
}

TEST_CASE("bifurcation semantics against the quartic solver", "[bifurcation]") {
    const double estar = e_min(kCanonical);

    PhysicalParams p = kCanonical;
    p.epsilon = estar * p.mass;
    const QuarticAnalysis at = turning_points(p, Convention::section4);
    CHECK(double_positive_root(at).has_value());

    p.epsilon = (estar + 1e-3) * p.mass;
    const auto above = positive_real_roots(turning_points(p, Convention::section4));
    CHECK(above.size() == 2);
    CHECK(above[1] - above[0] > double_root_threshold(above[1]));

    p.epsilon = (estar - 1e-3) * p.mass;
    const auto below = positive_real_roots(turning_points(p, Convention::section4));
    CHECK(below.empty());
}
