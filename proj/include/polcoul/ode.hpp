#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "polcoul/errors.hpp"

namespace polcoul {

struct OdeOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double overflow_limit = 1e100;
    long max_steps = 2000000;
};

template <std::size_t N>
struct OdeTrace {
    std::vector<double> t;
    std::vector<std::array<double, N>> y;
};

// Embedded Dormand-Prince 5(4) with standard step-size control. Integrates
// from t0 to t1 (either direction) and records every accepted step; the final
// step is clamped to land on t1 exactly. Throws std::overflow_error when the
// state magnitude exceeds the overflow limit.
template <std::size_t N, class F>
OdeTrace<N> integrate_dp5(F&& deriv, double t0, double t1, std::array<double, N> y0,
                          const OdeOptions& opt = {}) {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                            e4 = 125.0 / 192 - 393.0 / 640,
                            e5 = -2187.0 / 6784 + 92097.0 / 339200,
                            e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

    if (t0 == t1) throw std::invalid_argument("integrate_dp5: empty span");
    const double dir = t1 > t0 ? 1.0 : -1.0;

    OdeTrace<N> trace;
    trace.t.push_back(t0);
    trace.y.push_back(y0);

    double t = t0;
    std::array<double, N> y = y0;
    double h = dir * std::min(1e-3 * std::abs(t1 - t0), 1.0);
    auto k1 = deriv(t, y);

    std::array<double, N> ytmp{}, y5{};
    for (long step = 0; step < opt.max_steps; ++step) {
        if (dir * (t + h) > dir * t1) h = t1 - t;

        for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
        const auto k2 = deriv(t + c2 * h, ytmp);
        for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        const auto k3 = deriv(t + c3 * h, ytmp);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        const auto k4 = deriv(t + c4 * h, ytmp);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        const auto k5 = deriv(t + c5 * h, ytmp);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] +
                                  a65 * k5[i]);
        const auto k6 = deriv(t + h, ytmp);
        for (std::size_t i = 0; i < N; ++i)
            y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        const auto k7 = deriv(t + h, y5);

        double err = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                   e6 * k6[i] + e7 * k7[i]);
            const double scale =
                opt.abs_tol + opt.rel_tol * std::max(std::abs(y[i]), std::abs(y5[i]));
            err = std::max(err, std::abs(ei) / scale);
        }

        if (err <= 1.0 || std::abs(h) <= 1e-14 * std::max(1.0, std::abs(t))) {
            t += h;
            y = y5;
            k1 = k7;  // first-same-as-last
            trace.t.push_back(t);
            trace.y.push_back(y);
            for (std::size_t i = 0; i < N; ++i)
                if (std::abs(y[i]) > opt.overflow_limit)
                    throw std::overflow_error("integrate_dp5: solution exceeded overflow limit");
            if (t == t1) return trace;
        }
        const double factor =
            err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
        h *= std::min(5.0, std::max(0.2, factor));
        if (!std::isfinite(h) || h == 0.0)
            throw convergence_error("integrate_dp5: step size collapsed");
    }
    throw convergence_error("integrate_dp5: step budget exhausted");
}

}  // namespace polcoul
