#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "pendulum/elliptic.hpp"
#include "pendulum/errors.hpp"
#include "pendulum/ode.hpp"

namespace pendulum {

inline constexpr double separatrix_energy = 2.0;
/// Energies this close to 2 are treated as the separatrix (quadrature moduli
/// k -> 1 make results meaningless any closer).
inline constexpr double separatrix_band = 1e-9;
/// sup of the oscillation action I0 over P0 (value of I0 at e = 2).
inline constexpr double oscillation_action_sup = 8.0 / std::numbers::pi;
/// inf of the rotation action I± over P± (value of I± at e = 2).
inline constexpr double rotation_action_inf = 4.0 / std::numbers::pi;

/// Normalize an angle to [-pi, pi).
inline double wrap_angle(double a) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    a = std::fmod(a + std::numbers::pi, two_pi);
    if (a < 0.0) a += two_pi;
    return a - std::numbers::pi;
}

/// A point (p, alpha) of the cylinder T*S^1. alpha is stored normalized to
/// [-pi, pi), so points differing by 2*pi in alpha compare equal.
struct phase_point {
    double p;
    double alpha;

    phase_point(double p_, double alpha_) : p(p_), alpha(wrap_angle(alpha_)) {}

    friend bool operator==(const phase_point& a, const phase_point& b) {
        return a.p == b.p && a.alpha == b.alpha;
    }
};

/// The Z2 symmetry (p, alpha) -> (-p, -alpha).
inline phase_point zeta(const phase_point& pt) { return phase_point(-pt.p, -pt.alpha); }

enum class energy_region {
    stable_equilibrium, // e = 0
    oscillation,        // 0 < e < 2
    separatrix,         // e = 2 (within separatrix_band)
    rotation_plus,      // e > 2, p > 0
    rotation_minus      // e > 2, p < 0
};

inline const char* region_name(energy_region r) {
    switch (r) {
        case energy_region::stable_equilibrium: return "equilibrium";
        case energy_region::oscillation: return "oscillation";
        case energy_region::separatrix: return "separatrix";
        case energy_region::rotation_plus: return "rotation+";
        case energy_region::rotation_minus: return "rotation-";
    }
    return "?";
}

/// Total, deterministic classification of (e, sign p).
inline energy_region classify(double e, double p) {
    if (e <= 0.0) return energy_region::stable_equilibrium;
    if (std::fabs(e - separatrix_energy) <= separatrix_band) return energy_region::separatrix;
    if (e < separatrix_energy) return energy_region::oscillation;
    return p >= 0.0 ? energy_region::rotation_plus : energy_region::rotation_minus;
}

/// H(p, alpha) = p^2/2 - cos(alpha) + 1  (>= 0 everywhere).
inline double hamiltonian(const phase_point& pt) {
    return 0.5 * pt.p * pt.p - std::cos(pt.alpha) + 1.0;
}

inline energy_region classify(const phase_point& pt) { return classify(hamiltonian(pt), pt.p); }

struct tangent2 {
    double dp;
    double dalpha;
};

/// Hamiltonian vector field: (dp/dt, dalpha/dt) = (-sin(alpha), p).
inline tangent2 vector_field(const phase_point& pt) {
    return {-std::sin(pt.alpha), pt.p};
}

namespace detail {

// Per-step tolerance that keeps the *accumulated* drift below 10*tol over
// |t| <= 100 with margin.
inline double step_tol(double tol) { return std::max(tol / 100.0, 1e-14); }

} // namespace detail

/// Flow of Hamilton's equations for time t with adaptive step control.
/// Energy drift stays below 10*tol over |t| <= 100.
inline phase_point flow(const phase_point& pt, double t, double tol = 1e-10) {
    if (!(tol > 0.0))
        throw domain_error("flow: requires tol > 0");
    ode_state<2> y{pt.p, pt.alpha};
    auto rhs = [](double, const ode_state<2>& s) {
        return ode_state<2>{-std::sin(s[1]), s[0]};
    };
    try {
        y = integrate<2>(rhs, y, 0.0, t, detail::step_tol(tol));
    } catch (const integration_error& err) {
        throw integration_error("flow: step underflow (separatrix slowdown?)", err.failure_time());
    }
    return phase_point(y[0], y[1]);
}

/// Positive turning angle alpha+ = arccos(1 - e) for an oscillation at energy e.
inline double turning_angle(double e) {
    if (!(e > 0.0 && e < separatrix_energy))
        throw domain_error("turning_angle: requires 0 < e < 2");
    return std::acos(1.0 - e);
}

/// Period of the orbit through energy level e (T for oscillation, T± for
/// rotation; both components of H^{-1}(e) share the same period).
inline double period(double e) {
    if (!(e > 0.0))
        throw domain_error("period: requires e > 0");
    if (std::fabs(e - separatrix_energy) <= separatrix_band)
        throw domain_error("period: divergent at the separatrix e = 2");
    if (e < separatrix_energy)
        return 4.0 * complete_K(elliptic_modulus(std::sqrt(e / 2.0)));
    // dt = dalpha / p over one full revolution
    return 2.0 * std::numbers::sqrt2 / std::sqrt(e) *
           complete_K(elliptic_modulus(std::sqrt(2.0 / e)));
}

namespace detail {

// I0(e) = (4/pi) [ (e-2) K(sqrt(e/2)) + 2 E(sqrt(e/2)) ], the closed form of
// (4e/pi) int_0^{pi/2} cos^2 phi / sqrt(1 - (e/2) sin^2 phi) dphi.
inline double oscillation_action(double e) {
    if (e == 0.0) return 0.0;
    const elliptic_modulus k(std::sqrt(e / 2.0));
    const double K = e < 2.0 ? complete_K(k) : 0.0; // (e-2)K -> 0 as e -> 2
    const double E = complete_E(k);
    if (e == 2.0) return oscillation_action_sup;
    return 4.0 / std::numbers::pi * ((e - 2.0) * K + 2.0 * E);
}

// I±(e) = (2 sqrt(2e)/pi) E(sqrt(2/e)).
inline double rotation_action(double e) {
    return 2.0 * std::sqrt(2.0 * e) / std::numbers::pi *
           complete_E(elliptic_modulus(std::sqrt(2.0 / e)));
}

} // namespace detail

/// Action of the connected component of H^{-1}(e): I0 below the separatrix,
/// I± above. Normalization is (1/2pi) * loop integral of p dalpha.
inline double component_action(double e) {
    if (!(e >= 0.0))
        throw domain_error("component_action: requires e >= 0");
    if (std::fabs(e - separatrix_energy) <= separatrix_band)
        throw domain_error("component_action: undefined on the separatrix band");
    return e < separatrix_energy ? detail::oscillation_action(e) : detail::rotation_action(e);
}

/// Action restricted to a region. Rejects region/energy mismatches.
inline double action(double e, energy_region region) {
    switch (region) {
        case energy_region::stable_equilibrium:
            if (e != 0.0) throw domain_error("action: equilibrium region requires e = 0");
            return 0.0;
        case energy_region::oscillation:
            if (!(e >= 0.0 && e < separatrix_energy - separatrix_band))
                throw domain_error("action: oscillation region requires 0 <= e < 2");
            return detail::oscillation_action(e);
        case energy_region::rotation_plus:
        case energy_region::rotation_minus:
            if (!(e > separatrix_energy + separatrix_band))
                throw domain_error("action: rotation region requires e > 2");
            return detail::rotation_action(e);
        case energy_region::separatrix:
            throw domain_error("action: undefined on the separatrix");
    }
    throw domain_error("action: bad region");
}

/// Globalized action: I0 on [0,2], 2*I± above 2. Continuous at e = 2.
inline double full_action(double e) {
    if (!(e >= 0.0))
        throw domain_error("full_action: requires e >= 0");
    if (e <= separatrix_energy) return detail::oscillation_action(e);
    return 2.0 * detail::rotation_action(e);
}

/// Time along the orbit from the reference point to pt, in [0, T).
/// Reference: alpha = -alpha+ with p > 0 for oscillation, alpha = -pi for
/// rotation (both signs).
inline double orbit_time(const phase_point& pt) {
    const double e = hamiltonian(pt);
    const energy_region region = classify(e, pt.p);
    switch (region) {
        case energy_region::oscillation: {
            const double ap = turning_angle(e);
            const double k = std::sqrt(e / 2.0);
            const double Kq = complete_K(elliptic_modulus(k));
            const double s = std::sin(0.5 * pt.alpha) / std::sin(0.5 * ap);
            const double phi = std::asin(std::clamp(s, -1.0, 1.0));
            const double t_up = Kq + incomplete_F(phi, k); // p >= 0 branch, in [0, T/2]
            return pt.p >= 0.0 ? t_up : 4.0 * Kq - t_up;
        }
        case energy_region::rotation_plus: {
            const double kappa = std::sqrt(2.0 / e);
            const double pref = 2.0 / std::sqrt(2.0 * e);
            return pref * (complete_K(elliptic_modulus(kappa)) + incomplete_F(0.5 * pt.alpha, kappa));
        }
        case energy_region::rotation_minus: {
            const double kappa = std::sqrt(2.0 / e);
            const double pref = 2.0 / std::sqrt(2.0 * e);
            return pref * (complete_K(elliptic_modulus(kappa)) - incomplete_F(0.5 * pt.alpha, kappa));
        }
        default:
            throw domain_error("orbit_time: undefined at equilibria and on the separatrix");
    }
}

/// Angle variable theta in [0, 2pi): advances linearly along the flow,
/// angle(flow(pt, t)) = angle(pt) + 2 pi t / T (mod 2 pi).
inline double angle(const phase_point& pt) {
    const double e = hamiltonian(pt);
    const double t = orbit_time(pt); // validates the region
    const double T = period(e);
    double th = 2.0 * std::numbers::pi * t / T;
    th = std::fmod(th, 2.0 * std::numbers::pi);
    if (th < 0.0) th += 2.0 * std::numbers::pi;
    return th;
}

/// Action-angle pair (I, theta) of the orbit through pt.
struct action_angle_value {
    double action; // >= 0
    double angle;  // in [0, 2pi)
};

inline action_angle_value action_angle(const phase_point& pt) {
    return {component_action(hamiltonian(pt)), angle(pt)};
}

} // namespace pendulum
