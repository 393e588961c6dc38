#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "polcoul/params.hpp"

using namespace polcoul;
using Catch::Approx;

TEST_CASE("derive: polarizability switched off at alpha = 0", "[params]") {
    const DerivedParams d = derive({0.0, 1.0, 0.0, 1, 1.0});
    CHECK(d.K2 == Approx(1.0));
    CHECK(d.J2 == Approx(2.0));
    CHECK(d.Sigma2 == 0.0);
    CHECK(std::abs(d.A) == 0.0);
}

TEST_CASE("derive: canonical bound-state parameters", "[params]") {
    const DerivedParams d = derive({0.75, 1.0, 1.0, 0, -1.0});
    CHECK(d.K2 == Approx(0.4375));
    CHECK(d.J2 == Approx(-1.0));
    CHECK(d.Sigma2 == Approx(-1.0));
    CHECK(d.A.real() == Approx(std::pow(0.4375, 0.25)).epsilon(1e-12));
    CHECK(d.A.imag() == Approx(0.0).margin(1e-15));
}

TEST_CASE("derive: K2 at the bifurcation energy", "[params]") {
    const DerivedParams d = derive({0.614659, 1.0, 1.0, 0, -1.0});
    CHECK(d.K2 == Approx(0.622194).epsilon(1e-5));
}

TEST_CASE("derive: A is the principal fourth root", "[params]") {
    // all four sign combinations of (eps^2 - M^2, Sigma2)
    const PhysicalParams cases[] = {
        {0.75, 1.0, 1.0, 0, -1.0},
        {0.75, 1.0, 1.0, 0, +1.0},
        {1.50, 1.0, 1.0, 0, -1.0},
        {1.50, 1.0, 1.0, 0, +1.0},
    };
    for (const auto& p : cases) {
        const DerivedParams d = derive(p);
        const std::complex<double> a4 = d.A * d.A * d.A * d.A;
        const std::complex<double> want(-d.K2 * d.Sigma2, 0.0);
        CHECK(std::abs(a4 - want) <= 1e-12 * std::max(1.0, std::abs(want)));
        CHECK(std::arg(d.A) >= -1e-15);          // principal branch: arg in [0, pi/2]
        CHECK(std::arg(d.A) <= M_PI / 2 + 1e-15);
    }
}

TEST_CASE("p_squared: hand value and limits", "[params]") {
    const PhysicalParams p{0.0, 1.0, 1.0, 0, -1.0};
    CHECK(p_squared(1.0, p) == Approx(-1.0));

    // r -> inf tends to eps^2 - M^2
    const PhysicalParams q{0.75, 1.0, 1.0, 2, -1.0};
    CHECK(p_squared(1e9, q) == Approx(0.75 * 0.75 - 1.0).epsilon(1e-6));

    // r -> 0 leading behavior Sigma2 / r^4
    const DerivedParams d = derive(q);
    for (double r : {1e-3, 1e-4}) {
        const double ratio = p_squared(r, q) * r * r * r * r / d.Sigma2;
        CHECK(ratio == Approx(1.0).epsilon(1e-2 * r / 1e-4));
    }

    CHECK_THROWS_AS(p_squared(0.0, p), std::domain_error);
    CHECK_THROWS_AS(p_squared(-1.0, p), std::domain_error);
}

TEST_CASE("p_squared * r^4 is the turning quartic (polynomial fit)", "[params]") {
    const PhysicalParams p{0.8, 1.3, 0.7, 1, -1.0};
    const DerivedParams d = derive(p);
    const std::array<double, 5> nodes{0.5, 0.9, 1.3, 2.0, 3.1};

    Eigen::Matrix<double, 5, 5> vand;
    Eigen::Matrix<double, 5, 1> rhs;
    for (int i = 0; i < 5; ++i) {
        const double r = nodes[i];
        for (int k = 0; k < 5; ++k) vand(i, k) = std::pow(r, k);
        rhs(i) = p_squared(r, p) * std::pow(r, 4);
    }
    const Eigen::Matrix<double, 5, 1> coef = vand.fullPivLu().solve(rhs);

    const std::array<double, 5> want{d.Sigma2, 0.0, -d.J2, 2.0 * p.epsilon * p.alpha, -d.K2};
    for (int k = 0; k < 5; ++k)
        CHECK(std::abs(coef(k) - want[k]) <=
              1e-10 * std::max(1.0, std::abs(want[k])));
}

TEST_CASE("dimensionless energy accessor", "[params]") {
    const PhysicalParams p{0.6, 1.0, 1.0, 0, -1.0};
    CHECK(p.e() == Approx(0.6));
    const PhysicalParams q{1.2, 2.0, 1.0, 0, -1.0};
    CHECK(q.e() == Approx(0.6));
}

TEST_CASE("validate rejects bad inputs", "[params]") {
    CHECK_THROWS_AS(validate({0.0, 0.0, 1.0, 0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(validate({0.0, -1.0, 1.0, 0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(validate({0.0, 1.0, 1.0, -1, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(validate({0.0, 1.0, 1.0, 0, 0.0}), std::invalid_argument);
    CHECK_NOTHROW(validate({0.0, 1.0, 1.0, 0, 1.0}));
}
