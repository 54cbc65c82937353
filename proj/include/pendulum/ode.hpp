#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

#include "pendulum/errors.hpp"

namespace pendulum {

template <std::size_t N>
using ode_state = std::array<double, N>;

namespace detail {

template <std::size_t N>
ode_state<N> axpy(const ode_state<N>& y, double h, const ode_state<N>& k) {
    ode_state<N> out;
    for (std::size_t i = 0; i < N; ++i) out[i] = y[i] + h * k[i];
    return out;
}

} // namespace detail

/// Adaptive Dormand-Prince 5(4) integration of y' = rhs(t, y) from t0 to t1
/// (either direction). tol is used as both absolute and relative tolerance.
/// Throws integration_error on step-size underflow, naming the failure time.
template <std::size_t N, typename F>
ode_state<N> integrate(F&& rhs, ode_state<N> y, double t0, double t1, double tol) {
    if (!(tol > 0.0))
        throw domain_error("integrate: requires tol > 0");
    if (t0 == t1)
        return y;

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
                            e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                            e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

    const double dir = t1 > t0 ? 1.0 : -1.0;
    const double span = std::fabs(t1 - t0);
    double t = t0;
    double h = dir * std::min(0.1, 0.05 * span);

    while ((t1 - t) * dir > 0.0) {
        if (std::fabs(h) < 4.0 * 2.220446049250313e-16 * std::max(std::fabs(t), 1.0))
            throw integration_error("integrate: step size underflow", t);
        if ((t + h - t1) * dir > 0.0)
            h = t1 - t;

        const ode_state<N> k1 = rhs(t, y);
        const ode_state<N> k2 = rhs(t + c2 * h, detail::axpy(y, h * a21, k1));
        ode_state<N> tmp;
        for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        const ode_state<N> k3 = rhs(t + c3 * h, tmp);
        for (std::size_t i = 0; i < N; ++i)
            tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        const ode_state<N> k4 = rhs(t + c4 * h, tmp);
        for (std::size_t i = 0; i < N; ++i)
            tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        const ode_state<N> k5 = rhs(t + c5 * h, tmp);
        for (std::size_t i = 0; i < N; ++i)
            tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        const ode_state<N> k6 = rhs(t + h, tmp);

        ode_state<N> y5;
        for (std::size_t i = 0; i < N; ++i)
            y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        const ode_state<N> k7 = rhs(t + h, y5);

        double err = 0.0;
        bool finite = true;
        for (std::size_t i = 0; i < N; ++i) {
            const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                   e6 * k6[i] + e7 * k7[i]);
            const double scale = tol + tol * std::max(std::fabs(y[i]), std::fabs(y5[i]));
            const double r = ei / scale;
            err += r * r;
            if (!std::isfinite(y5[i])) finite = false;
        }
        err = std::sqrt(err / static_cast<double>(N));
        if (!std::isfinite(err)) finite = false;

        if (finite && err <= 1.0) {
            t += h;
            y = y5;
        }
        const double factor = finite && err > 0.0
                                  ? std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0)
                                  : (finite ? 5.0 : 0.2);
        h *= factor;
    }
    return y;
}

} // namespace pendulum
