#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "polcoul/minimize.hpp"
#include "polcoul/ode.hpp"
#include "polcoul/rootfind.hpp"

using namespace polcoul;
using Catch::Approx;

TEST_CASE("find_root_bracketed: simple roots", "[solvers]") {
    const double r1 = find_root_bracketed([](double x) { return std::cos(x); }, 0.0, 3.0);
    CHECK(r1 == Approx(M_PI / 2).epsilon(1e-12));

    const double r2 =
        find_root_bracketed([](double x) { return x * x * x - 2.0; }, 0.0, 2.0);
    CHECK(r2 == Approx(std::cbrt(2.0)).epsilon(1e-12));

    // stiff slope near the root
    const double r3 =
        find_root_bracketed([](double x) { return std::expm1(40.0 * (x - 0.3)); }, 0.0, 1.0);
    CHECK(r3 == Approx(0.3).margin(1e-10));

    CHECK_THROWS_AS(find_root_bracketed([](double x) { return 1.0 + x * x; }, -1.0, 1.0),
                    no_root_error);
}

TEST_CASE("golden_section: quadratic minima", "[solvers]") {
    auto q = [](double a, double x0) {
        return [a, x0](double x) { return a * (x - x0) * (x - x0) + 3.0; };
    };
    const MinimizeResult m1 = golden_section(q(1.0, 1.0), -1.0, 2.0, 1e-10);
    CHECK(m1.x == Approx(1.0).margin(1e-7));
    CHECK(m1.f == Approx(3.0).margin(1e-12));
    CHECK_FALSE(m1.at_boundary);

    // minimizer pinned to an endpoint is flagged
    const MinimizeResult m2 = golden_section([](double x) { return x; }, 0.0, 1.0, 1e-8);
    CHECK(m2.at_boundary);
    CHECK(m2.x == Approx(0.0).margin(1e-6));

    // NaN patches are treated as +inf
    const MinimizeResult m3 = golden_section(
        [](double x) { return x < 0.5 ? std::nan("") : (x - 0.8) * (x - 0.8); }, 0.0, 1.0,
        1e-9);
    CHECK(m3.x == Approx(0.8).margin(1e-6));
}

TEST_CASE("integrate_dp5: harmonic oscillator accuracy", "[solvers]") {
    auto rhs = [](double, const std::array<double, 2>& y) -> std::array<double, 2> {
        return {y[1], -y[0]};
    };
    const OdeTrace<2> tr = integrate_dp5<2>(rhs, 0.0, 10.0, {1.0, 0.0});
    CHECK(tr.t.back() == 10.0);
    for (std::size_t i = 0; i < tr.t.size(); ++i) {
        CHECK(std::abs(tr.y[i][0] - std::cos(tr.t[i])) < 1e-8);
        CHECK(std::abs(tr.y[i][1] + std::sin(tr.t[i])) < 1e-8);
    }

    // backward integration returns to the initial state
    const OdeTrace<2> back = integrate_dp5<2>(rhs, 10.0, 0.0, tr.y.back());
    CHECK(std::abs(back.y.back()[0] - 1.0) < 1e-8);
    CHECK(std::abs(back.y.back()[1]) < 1e-8);

    CHECK_THROWS_AS(integrate_dp5<2>(rhs, 1.0, 1.0, {1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("integrate_dp5: overflow guard", "[solvers]") {
    auto rhs = [](double, const std::array<double, 1>& y) -> std::array<double, 1> {
        return {y[0]};
    };
    CHECK_THROWS_AS(integrate_dp5<1>(rhs, 0.0, 300.0, {1.0}), std::overflow_error);
}
