#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "pendulum/classical.hpp"
#include "pendulum/errors.hpp"

namespace pendulum {

/// A quantized torus: I_component(energy) = n * hbar on the given region.
struct quantum_level {
    int n;
    energy_region region;
    double energy;
};

namespace detail {

inline double bisect_oscillation(double target) {
    double lo = separatrix_band, hi = separatrix_energy - separatrix_band;
    if (!(target > oscillation_action(lo) && target < oscillation_action(hi)))
        throw no_level_error("solve_level: n*hbar outside the oscillation action range");
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        (oscillation_action(mid) < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

inline double bisect_rotation(double target) {
    double lo = separatrix_energy + separatrix_band;
    if (!(target > rotation_action(lo)))
        throw no_level_error("solve_level: n*hbar below the rotation action range");
    double hi = 4.0;
    while (rotation_action(hi) < target) {
        hi *= 2.0;
        if (hi > 1e18) throw no_level_error("solve_level: target action unreachable");
    }
    while (hi - lo > 1e-12 * std::max(1.0, hi)) {
        const double mid = 0.5 * (lo + hi);
        (rotation_action(mid) < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace detail

/// Solve I_component(e) = n * hbar on the given region by bisection
/// (the action is strictly monotone there, so the solution is unique).
inline double solve_level(int n, double hbar, energy_region region) {
    if (!(hbar > 0.0))
        throw domain_error("solve_level: requires hbar > 0");
    if (n < 0)
        throw no_level_error("solve_level: requires n >= 0");
    switch (region) {
        case energy_region::oscillation:
        case energy_region::stable_equilibrium:
            if (n == 0) return 0.0; // the singular torus H^{-1}(0)
            return detail::bisect_oscillation(n * hbar);
        case energy_region::rotation_plus:
        case energy_region::rotation_minus:
            return detail::bisect_rotation(n * hbar);
        case energy_region::separatrix:
            throw domain_error("solve_level: the separatrix carries no level");
    }
    throw domain_error("solve_level: bad region");
}

/// The quantized catalogue for a given hbar.
struct spectrum {
    double hbar = 0.0;
    int N = 0;      // largest n with n*hbar < 8/pi
    int M = 0;      // ceil((N+1)/2): first rotation quantum number
    int m_max = 0;  // truncation of the rotation lattice
    std::vector<quantum_level> levels; // oscillation n=0..N, then rotation pairs m=M..m_max
    double epsilon_gap = 0.0;          // half the least distance from 2 to a level energy

    const quantum_level* find(int n, energy_region region) const {
        for (const auto& l : levels)
            if (l.n == n && l.region == region) return &l;
        return nullptr;
    }
};

struct hbar_validation {
    bool ok = false;
    int N = 0;
    int M = 0;
    int offending_n = -1;
    std::string reason;
};

namespace detail {

inline int count_below(double hbar, double sup) {
    // largest n >= 0 with n*hbar < sup
    int n = static_cast<int>(std::floor(sup / hbar));
    while (n * hbar >= sup) --n;
    while ((n + 1) * hbar < sup) ++n;
    return n;
}

} // namespace detail

/// Check hbar against the separatrix action limits 8/pi and 4/pi. ok only if
/// no lattice point collides within 1e-9 and the oscillation lattice is
/// nonempty beyond n = 0.
inline hbar_validation validate_hbar(double hbar) {
    hbar_validation v;
    if (!(hbar > 0.0)) {
        v.reason = "hbar must be positive";
        return v;
    }
    v.N = detail::count_below(hbar, oscillation_action_sup);
    v.M = (v.N + 2) / 2; // ceil((N+1)/2)
    for (int n = 1; n <= v.N + 1; ++n) {
        if (std::fabs(n * hbar - oscillation_action_sup) < 1e-9) {
            v.offending_n = n;
            v.reason = "n*hbar collides with the separatrix action 8/pi at n=" + std::to_string(n);
            return v;
        }
    }
    const int m_lim = static_cast<int>(std::ceil(rotation_action_inf / hbar)) + 1;
    for (int m = 1; m <= m_lim; ++m) {
        if (std::fabs(m * hbar - rotation_action_inf) < 1e-9) {
            v.offending_n = m;
            v.reason = "m*hbar collides with the separatrix action 4/pi at m=" + std::to_string(m);
            return v;
        }
    }
    if (v.N < 1) {
        v.reason = "N = 0: the oscillation lattice is empty beyond the singular torus";
        return v;
    }
    v.ok = true;
    return v;
}

/// Solve every Bohr-Sommerfeld condition up to the rotation truncation m_max.
/// Throws rejected_hbar_error if a level would land on the separatrix band.
inline spectrum build_spectrum(double hbar, int m_max = 32) {
    if (!(hbar > 0.0))
        throw domain_error("build_spectrum: requires hbar > 0");
    spectrum sp;
    sp.hbar = hbar;
    sp.N = detail::count_below(hbar, oscillation_action_sup);
    sp.M = (sp.N + 2) / 2;
    sp.m_max = m_max;
    if (m_max < sp.M)
        throw domain_error("build_spectrum: m_max must be >= M = " + std::to_string(sp.M));

    for (int n = 0; n <= sp.N + 1; ++n)
        if (std::fabs(n * hbar - oscillation_action_sup) < 1e-9)
            throw rejected_hbar_error(
                "build_spectrum: level n=" + std::to_string(n) + " sits on the separatrix", n);

    for (int n = 0; n <= sp.N; ++n)
        sp.levels.push_back({n, energy_region::oscillation,
                             solve_level(n, hbar, energy_region::oscillation)});
    for (int m = sp.M; m <= m_max; ++m) {
        const double e = solve_level(m, hbar, energy_region::rotation_plus);
        sp.levels.push_back({m, energy_region::rotation_plus, e});
        sp.levels.push_back({m, energy_region::rotation_minus, e});
    }

    double least = separatrix_energy;
    for (const auto& l : sp.levels) {
        const double d = std::fabs(l.energy - separatrix_energy);
        if (d <= separatrix_band)
            throw rejected_hbar_error(
                "build_spectrum: level n=" + std::to_string(l.n) + " violates the separatrix gap",
                l.n);
        least = std::min(least, d);
    }
    sp.epsilon_gap = 0.5 * least;
    return sp;
}

} // namespace pendulum
