#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>

#include "pendulum/classical.hpp"
#include "pendulum/errors.hpp"
#include "pendulum/ode.hpp"

namespace pendulum {

using complexd = std::complex<double>;

namespace detail {

inline phase_point transport_start(double e) {
    if (e < separatrix_energy)
        return phase_point(std::sqrt(2.0 * e), 0.0); // bottom of the well, moving right
    return phase_point(std::sqrt(2.0 * (e - separatrix_energy)), -std::numbers::pi); // C+
}

} // namespace detail

/// Parallel transport of the fiber coefficient z along one period of the
/// orbit at energy e: dz/dt = i p(t)^2 z / hbar, coupled to the flow.
/// Preserves |z| up to the integrator tolerance.
inline complexd parallel_transport(double e, complexd z0, double hbar, double tol = 1e-12) {
    if (!(hbar > 0.0))
        throw domain_error("parallel_transport: requires hbar > 0");
    if (z0 == complexd(0.0, 0.0))
        throw domain_error("parallel_transport: requires z0 != 0");
    if (!(e > 0.0) || std::fabs(e - separatrix_energy) <= separatrix_band)
        throw domain_error("parallel_transport: requires e in (0,2) u (2,inf)");

    const double T = period(e);
    const phase_point start = detail::transport_start(e);
    ode_state<4> y{start.p, start.alpha, z0.real(), z0.imag()};
    const double inv_hbar = 1.0 / hbar;
    auto rhs = [inv_hbar](double, const ode_state<4>& s) {
        const double w = inv_hbar * s[0] * s[0];
        return ode_state<4>{-std::sin(s[1]), s[0], -w * s[3], w * s[2]};
    };
    y = integrate<4>(rhs, y, 0.0, T, detail::step_tol(tol));
    return complexd(y[2], y[3]);
}

/// Analytic holonomy of the prequantum connection around the component of
/// H^{-1}(e): exp(2 pi i I_component(e) / hbar). Unit modulus.
inline complexd holonomy_phase(double e, double hbar) {
    if (!(hbar > 0.0))
        throw domain_error("holonomy_phase: requires hbar > 0");
    if (!(e > 0.0) || std::fabs(e - separatrix_energy) <= separatrix_band)
        throw domain_error("holonomy_phase: requires e in (0,2) u (2,inf)");
    const double x = 2.0 * std::numbers::pi * component_action(e) / hbar;
    return complexd(std::cos(x), std::sin(x));
}

/// Quantum number n with |I_component(e) - n hbar| < tol, if one exists.
inline std::optional<int> is_bohr_sommerfeld(double e, double hbar, double tol) {
    if (!(e > 0.0) || std::fabs(e - separatrix_energy) <= separatrix_band)
        throw domain_error("is_bohr_sommerfeld: requires e in (0,2) u (2,inf)");
    const double I = component_action(e);
    const auto n = static_cast<long long>(std::llround(I / hbar));
    if (n >= 0 && std::fabs(I - static_cast<double>(n) * hbar) < tol)
        return static_cast<int>(n);
    return std::nullopt;
}

} // namespace pendulum
