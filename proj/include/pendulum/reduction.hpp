#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <utility>
#include <vector>

#include "pendulum/classical.hpp"
#include "pendulum/errors.hpp"
#include "pendulum/ode.hpp"
#include "pendulum/spectrum.hpp"

namespace pendulum {

using vec3 = std::array<double, 3>;

/// A point tau = (tau1, tau2, tau3) of the Z2-orbit space, cut out of R^3 by
/// the Casimir relation with |tau1| <= 1 and tau3 >= 0.
struct reduced_point {
    double tau1, tau2, tau3;

    vec3 as_array() const { return {tau1, tau2, tau3}; }
    static reduced_point from_array(const vec3& v) { return {v[0], v[1], v[2]}; }
};

/// The two conical singular points of the orbit space.
inline constexpr reduced_point singular_point_bottom{1.0, 0.0, 0.0};
inline constexpr reduced_point singular_point_top{-1.0, 0.0, 2.0};

/// Z2-orbit map: (p, alpha) -> (cos alpha, p sin alpha, H).
inline reduced_point orbit_map(const phase_point& pt) {
    return {std::cos(pt.alpha), pt.p * std::sin(pt.alpha), hamiltonian(pt)};
}

/// Defining relation of the orbit space:
/// C(tau) = tau2^2/2 - (tau3 + tau1 - 1)(1 - tau1^2).
inline double casimir(const vec3& t) {
    return 0.5 * t[1] * t[1] - (t[2] + t[0] - 1.0) * (1.0 - t[0] * t[0]);
}
inline double casimir(const reduced_point& t) { return casimir(t.as_array()); }

inline vec3 casimir_gradient(const vec3& t) {
    const double rho1 = t[2] + t[0] - 1.0;
    return {2.0 * t[0] * rho1 - (1.0 - t[0] * t[0]), t[1], -(1.0 - t[0] * t[0])};
}

/// A scalar function on R^3 with a gradient, analytic or finite-difference.
struct scalar_field {
    std::function<double(const vec3&)> value;
    std::function<vec3(const vec3&)> gradient;

    static scalar_field with_fd_gradient(std::function<double(const vec3&)> f,
                                         double step = 1e-6) {
        scalar_field sf;
        sf.value = f;
        sf.gradient = [f, step](const vec3& t) {
            vec3 g;
            for (int i = 0; i < 3; ++i) {
                vec3 hi = t, lo = t;
                hi[static_cast<std::size_t>(i)] += step;
                lo[static_cast<std::size_t>(i)] -= step;
                g[static_cast<std::size_t>(i)] = (f(hi) - f(lo)) / (2.0 * step);
            }
            return g;
        };
        return sf;
    }

    /// Five-point stencil, fourth order: exact up to round-off on
    /// polynomials of degree <= 4, so composites of quadratics difference
    /// cleanly.
    static scalar_field with_fd_gradient4(std::function<double(const vec3&)> f,
                                          double step = 1e-3) {
        scalar_field sf;
        sf.value = f;
        sf.gradient = [f, step](const vec3& t) {
            vec3 g;
            for (int i = 0; i < 3; ++i) {
                const auto at = [&](double d) {
                    vec3 u = t;
                    u[static_cast<std::size_t>(i)] += d;
                    return f(u);
                };
                g[static_cast<std::size_t>(i)] =
                    (8.0 * (at(step) - at(-step)) - (at(2.0 * step) - at(-2.0 * step))) /
                    (12.0 * step);
            }
            return g;
        };
        return sf;
    }
};

inline vec3 cross(const vec3& a, const vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline double dot(const vec3& a, const vec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

/// Poisson bracket on the orbit space: {F, G}(tau) = <grad F x grad G, grad C>.
inline double bracket(const scalar_field& F, const scalar_field& G, const reduced_point& tau) {
    const vec3 t = tau.as_array();
    return dot(cross(F.gradient(t), G.gradient(t)), casimir_gradient(t));
}

/// Reduced Hamiltonian flow: tau1' = -tau2, tau2' = 2 tau1 (tau3+tau1-1) +
/// tau1^2 - 1, tau3' = 0. Preserves the Casimir; tau3 is exactly constant.
inline reduced_point reduced_flow(const reduced_point& tau0, double t, double tol = 1e-10) {
    if (!(tol > 0.0))
        throw domain_error("reduced_flow: requires tol > 0");
    auto rhs = [](double, const ode_state<3>& s) {
        return ode_state<3>{-s[1], 2.0 * s[0] * (s[2] + s[0] - 1.0) + s[0] * s[0] - 1.0, 0.0};
    };
    const ode_state<3> out = integrate<3>(rhs, {tau0.tau1, tau0.tau2, tau0.tau3}, 0.0, t,
                                          detail::step_tol(tol));
    return {out[0], out[1], out[2]};
}

/// Reduced action Itilde(e): half the oscillation action below the
/// separatrix, equal to the rotation action above it; continuous at e = 2
/// (both one-sided limits are 4/pi).
inline double reduced_action(double e) {
    if (!(e > 0.0))
        throw domain_error("reduced_action: requires e > 0");
    if (std::fabs(e - separatrix_energy) <= separatrix_band)
        throw domain_error("reduced_action: undefined on the separatrix band");
    if (e < separatrix_energy)
        return 2.0 / std::numbers::pi *
               ((e - 2.0) * complete_K(elliptic_modulus(std::sqrt(e / 2.0))) +
                2.0 * complete_E(elliptic_modulus(std::sqrt(e / 2.0))));
    return detail::rotation_action(e);
}

/// Primitive period of the reduced flow on the level {tau3 = e}:
/// T/2 below the separatrix (the Z2 symmetry halves the orbit), T above.
inline double reduced_period(double e) {
    if (!(e > 0.0) || std::fabs(e - separatrix_energy) <= separatrix_band)
        throw domain_error("reduced_period: requires e in (0,2) u (2,inf)");
    return e < separatrix_energy ? 0.5 * period(e) : period(e);
}

/// Reduced angle in [0, 2pi), measured from the reference point tau1 = 1 on
/// the level curve, advancing with the reduced flow.
inline double reduced_angle(const reduced_point& tau) {
    const double e = tau.tau3;
    if (!(e > 0.0) || std::fabs(e - separatrix_energy) <= separatrix_band)
        throw domain_error("reduced_angle: requires e in (0,2) u (2,inf)");
    const double Ttil = reduced_period(e);
    double t; // time from the reference point tau1 = 1
    if (e < separatrix_energy) {
        // tau1 = 1 - e sin^2(psi) turns dt = dtau1 / |tau2| into the
        // standard incomplete integral; the turning point sits at t = K
        const double k = std::sqrt(e / 2.0);
        const double s = std::sqrt(std::clamp((1.0 - tau.tau1) / e, 0.0, 1.0));
        const double psi = std::asin(std::clamp(s, 0.0, 1.0));
        t = incomplete_F(psi, k);
    } else {
        // tau1 = cos(2 phi); the tau2 > 0 half covers tau1 from 1 to -1
        const double kappa = std::sqrt(2.0 / e);
        const double phi = 0.5 * std::acos(std::clamp(tau.tau1, -1.0, 1.0));
        t = 2.0 / std::sqrt(2.0 * e) * incomplete_F(phi, kappa);
    }
    if (tau.tau2 < 0.0) t = Ttil - t;
    double th = 2.0 * std::numbers::pi * t / Ttil;
    th = std::fmod(th, 2.0 * std::numbers::pi);
    if (th < 0.0) th += 2.0 * std::numbers::pi;
    return th;
}

/// A Bohr-Sommerfeld level of the reduced system: Itilde(energy) = k hbar.
struct reduced_level {
    int k;
    double energy;
};

namespace detail {

inline double bisect_reduced_below(double target) {
    double lo = separatrix_band, hi = separatrix_energy - separatrix_band;
    if (!(target > reduced_action(lo) && target < reduced_action(hi)))
        throw no_level_error("reduced level target outside the sub-separatrix action range");
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        (reduced_action(mid) < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

inline double bisect_reduced_above(double target) {
    double lo = separatrix_energy + separatrix_band, hi = 4.0;
    while (reduced_action(hi) < target) hi *= 2.0;
    while (hi - lo > 1e-12 * std::max(1.0, hi)) {
        const double mid = 0.5 * (lo + hi);
        (reduced_action(mid) < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace detail

/// Solve Itilde(e) = k hbar for k = 0..k_max, on both sides of the
/// separatrix. k with no solution (collision band) are skipped.
inline std::vector<reduced_level> reduced_spectrum(double hbar, int k_max) {
    if (!(hbar > 0.0))
        throw domain_error("reduced_spectrum: requires hbar > 0");
    if (k_max < 0)
        throw domain_error("reduced_spectrum: requires k_max >= 0");
    std::vector<reduced_level> out;
    for (int k = 0; k <= k_max; ++k) {
        const double target = k * hbar;
        try {
            if (k == 0) {
                out.push_back({0, 0.0});
            } else if (target < rotation_action_inf - 1e-9) {
                out.push_back({k, detail::bisect_reduced_below(target)});
            } else if (target > rotation_action_inf + 1e-9) {
                out.push_back({k, detail::bisect_reduced_above(target)});
            } // else: collision with the separatrix limit, no level
        } catch (const no_level_error&) {
            // unreachable target inside the guard band: skip k
        }
    }
    return out;
}

/// Shifting operators on the reduced basis {sigmatilde_k}: the lowering
/// operator sends sigmatilde_k to c_k sigmatilde_{k-1} with c_k = r0tilde(e_k)
/// (0 at the singular level, 1 at every interior level); raising is its
/// adjoint. Stored as dense coefficient vectors indexed by position in
/// `levels`.
struct reduced_shift {
    std::vector<int> ks;           // quantum numbers, ascending
    std::vector<double> constants; // c_k for each level (c at k=0 is 0)

    /// image position and coefficient of lowering applied to position i
    std::pair<int, double> lower(int i) const {
        if (i == 0 || constants[static_cast<std::size_t>(i)] == 0.0) return {-1, 0.0};
        return {i - 1, constants[static_cast<std::size_t>(i)]};
    }
    /// adjoint action: raising applied to position i (truncates at the top)
    std::pair<int, double> raise(int i) const {
        if (i + 1 >= static_cast<int>(ks.size())) return {-1, 0.0};
        return {i + 1, constants[static_cast<std::size_t>(i) + 1]};
    }
};

inline reduced_shift make_reduced_shift(const std::vector<reduced_level>& levels) {
    reduced_shift sh;
    for (const auto& rl : levels) {
        sh.ks.push_back(rl.k);
        sh.constants.push_back(rl.energy == 0.0 ? 0.0 : 1.0);
    }
    return sh;
}

/// Reconstruction with the 1-representation: reduced level k maps to the
/// unreduced level with quantum number 2k below the separatrix (zero sector)
/// and to sigma+_k above it. Energies must coincide within 1e-8.
inline std::vector<quantum_level> reconstruct_even(const std::vector<reduced_level>& levels,
                                                   const spectrum& sp) {
    std::vector<quantum_level> out;
    for (const auto& rl : levels) {
        const bool below = rl.energy < separatrix_energy;
        const int n = below ? 2 * rl.k : rl.k;
        const energy_region region =
            below ? energy_region::oscillation : energy_region::rotation_plus;
        const quantum_level* partner = sp.find(n, region);
        if (partner == nullptr)
            throw reconstruction_error("reconstruct_even: reduced level k=" +
                                       std::to_string(rl.k) + " has no lattice partner");
        if (std::fabs(partner->energy - rl.energy) > 1e-8)
            throw reconstruction_error("reconstruct_even: energy mismatch at k=" +
                                       std::to_string(rl.k));
        out.push_back(*partner);
    }
    return out;
}

/// Representative of the Z2-orbit of pt inside the fundamental domain
/// Delta = {p > 0} u {p = 0, alpha in [0, pi]}. Idempotent.
inline phase_point fundamental_representative(const phase_point& pt) {
    const bool in_delta =
        pt.p > 0.0 || (pt.p == 0.0 && (pt.alpha >= 0.0 || pt.alpha == -std::numbers::pi));
    return in_delta ? pt : zeta(pt);
}

enum class chart { u1, u2 };

/// The reduced 1-form thetatilde evaluated on a tangent 3-vector in one of
/// the two charts covering the nonsingular orbit space:
///   U1 (tau1 != ±1):            -tau2 (1 - tau1^2)^{-1} dtau1
///   U2 (tau1 != 0, rho1 != 0):  (2 rho1 dtau2 - tau2 dtau1 - tau2 dtau3) / (2 tau1 rho1)
inline double reduced_one_form(const reduced_point& tau, const vec3& tangent, chart ch) {
    if (ch == chart::u1) {
        const double den = 1.0 - tau.tau1 * tau.tau1;
        if (den == 0.0)
            throw domain_error("reduced_one_form: tau1 = +-1 is outside chart U1");
        return -tau.tau2 / den * tangent[0];
    }
    const double rho1 = tau.tau3 + tau.tau1 - 1.0;
    if (tau.tau1 == 0.0 || rho1 == 0.0)
        throw domain_error("reduced_one_form: point outside chart U2");
    return (2.0 * rho1 * tangent[1] - tau.tau2 * tangent[0] - tau.tau2 * tangent[2]) /
           (2.0 * tau.tau1 * rho1);
}

} // namespace pendulum
