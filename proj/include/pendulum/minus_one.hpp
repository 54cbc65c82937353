#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "pendulum/classical.hpp"
#include "pendulum/elliptic.hpp"
#include "pendulum/errors.hpp"
#include "pendulum/holonomy.hpp"
#include "pendulum/reduction.hpp"
#include "pendulum/spectrum.hpp"

namespace pendulum {

/// A point (tau, sigma) of the orbit variety of the bundle-level Z2 action
/// eta: (x, y, p, alpha) -> (-x, -y, -p, -alpha).
struct invariant_tuple {
    vec3 tau;                    // (cos a, p sin a, H)
    std::array<double, 5> sigma; // (x^2, y^2, xy, xp, yp)

    double rho1() const { return tau[0] + tau[2] - 1.0; }
};

/// The eight polynomial invariants of the -1-representation, evaluated at a
/// fiber value z = x + iy over pt.
inline invariant_tuple invariants8(complexd z, const phase_point& pt) {
    const double x = z.real(), y = z.imag();
    const reduced_point tau = orbit_map(pt);
    return {{tau.tau1, tau.tau2, tau.tau3},
            {x * x, y * y, x * y, x * pt.p, y * pt.p}};
}

/// Residuals of the five defining relations f1..f5 of the orbit variety.
inline std::array<double, 5> relations_residual(const invariant_tuple& t) {
    const double rho1 = t.rho1();
    const double one_m = 1.0 - t.tau[0] * t.tau[0];
    return {0.5 * t.tau[1] * t.tau[1] - rho1 * one_m,
            t.sigma[2] * t.sigma[2] - t.sigma[0] * t.sigma[1],
            0.5 * t.sigma[3] * t.sigma[3] - rho1 * t.sigma[0],
            0.5 * t.sigma[4] * t.sigma[4] - rho1 * t.sigma[1],
            0.5 * t.sigma[3] * t.sigma[4] - rho1 * t.sigma[2]};
}

enum class stratum { regular, singular };

struct stratum_class {
    stratum cls;
    int rank;
};

namespace detail {

// Singular values of an m x n matrix (m <= n) by one-sided Jacobi rotations
// on the rows: orthogonalize the m row vectors, singular values are the
// resulting row norms. Deterministic and accurate without squaring.
template <std::size_t M, std::size_t N>
std::array<double, M> singular_values(std::array<std::array<double, N>, M> a) {
    for (int sweep = 0; sweep < 60; ++sweep) {
        bool rotated = false;
        for (std::size_t i = 0; i < M; ++i) {
            for (std::size_t j = i + 1; j < M; ++j) {
                double aii = 0.0, ajj = 0.0, aij = 0.0;
                for (std::size_t k = 0; k < N; ++k) {
                    aii += a[i][k] * a[i][k];
                    ajj += a[j][k] * a[j][k];
                    aij += a[i][k] * a[j][k];
                }
                if (std::fabs(aij) <= 1e-30 + 1e-16 * std::sqrt(aii * ajj)) continue;
                rotated = true;
                const double zeta_r = (ajj - aii) / (2.0 * aij);
                const double t = (zeta_r >= 0.0 ? 1.0 : -1.0) /
                                 (std::fabs(zeta_r) + std::sqrt(1.0 + zeta_r * zeta_r));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (std::size_t k = 0; k < N; ++k) {
                    const double ai = a[i][k], aj = a[j][k];
                    a[i][k] = c * ai - s * aj;
                    a[j][k] = s * ai + c * aj;
                }
            }
        }
        if (!rotated) break;
    }
    std::array<double, M> sv{};
    for (std::size_t i = 0; i < M; ++i) {
        double norm2 = 0.0;
        for (std::size_t k = 0; k < N; ++k) norm2 += a[i][k] * a[i][k];
        sv[i] = std::sqrt(norm2);
    }
    return sv;
}

} // namespace detail

/// The 5x8 differential DF(tau, sigma) used to stratify the orbit variety,
/// in the variables (tau1, tau2, tau3, sigma1..sigma5). Note this is the
/// classifying matrix, not the literal Jacobian of f1..f5: those relations
/// are dependent on the variety (row 5 of the literal Jacobian lies in the
/// span of rows 2-4 wherever sigma3 != 0, giving generic rank 4), whereas
/// this matrix has rank 5 exactly on the regular stratum.
inline std::array<std::array<double, 8>, 5> relations_jacobian(const invariant_tuple& t) {
    const double rho1 = t.rho1();
    const double s1 = t.sigma[0], s2 = t.sigma[1], s3 = t.sigma[2], s4 = t.sigma[3],
                 s5 = t.sigma[4];
    return {{{2.0 * t.tau[0] * rho1 - (1.0 - t.tau[0]), t.tau[1],
              -(1.0 - t.tau[0] * t.tau[0]), 0, 0, 0, 0, 0},
             {0, 0, 0, -s2, -s1, 2.0 * s3, 0, 0},
             {-s1, 0, -s1, -rho1, 0, 0, s4, 0},
             {-s2, 0, -s2, 0, -rho1, 0, 0, s5},
             {-s3, 0, -s3, 0, 0, -rho1, s5, s4}}};
}

/// Numerical rank of DF with singular values below tol * sigma_max counted
/// as zero; Regular iff rank = 5.
inline stratum_class jacobian_rank(const invariant_tuple& t, double tol = 1e-8) {
    const auto res = relations_residual(t);
    for (double r : res)
        if (std::fabs(r) > 1e-6)
            throw domain_error("jacobian_rank: tuple is off the orbit variety");
    const auto sv = detail::singular_values<5, 8>(relations_jacobian(t));
    double smax = 0.0;
    for (double s : sv) smax = std::max(smax, s);
    int rank = 0;
    for (double s : sv)
        if (s > tol * smax && smax > 0.0) ++rank;
    return {rank == 5 ? stratum::regular : stratum::singular, rank};
}

/// A point (tau, nu) of the variety R, the domain of the bundle isomorphism
/// Psi: h(tau, nu) = 0, rho1 > 0, nu != 0.
struct reduced_bundle_point {
    vec3 tau;
    std::array<double, 2> nu;
};

/// Psi: (tau, nu) -> (tau, nu1^2/(2 rho1), nu2^2/(2 rho1), nu1 nu2/(2 rho1), nu1, nu2).
inline invariant_tuple psi(const reduced_bundle_point& t) {
    const double rho1 = t.tau[0] + t.tau[2] - 1.0;
    if (!(rho1 > 0.0))
        throw domain_error("psi: requires rho1 > 0");
    if (t.nu[0] == 0.0 && t.nu[1] == 0.0)
        throw domain_error("psi: requires nu != 0");
    const double inv = 0.5 / rho1;
    return {t.tau,
            {inv * t.nu[0] * t.nu[0], inv * t.nu[1] * t.nu[1], inv * t.nu[0] * t.nu[1],
             t.nu[0], t.nu[1]}};
}

/// Pi restricted to the regular part: (tau, sigma) -> (tau, (sigma4, sigma5)).
inline reduced_bundle_point pi_inverse(const invariant_tuple& t) {
    if (!(t.rho1() > 0.0))
        throw domain_error("pi_inverse: requires rho1 > 0");
    if (t.sigma[3] == 0.0 && t.sigma[4] == 0.0)
        throw domain_error("pi_inverse: requires (sigma4, sigma5) != 0");
    return {t.tau, {t.sigma[3], t.sigma[4]}};
}

/// Bohr-Sommerfeld levels of the *-reduced system. The reduced action of the
/// -1-representation equals Itilde, so the energies coincide with the
/// 1-representation levels; only the reconstruction parity differs.
inline std::vector<reduced_level> odd_reduced_spectrum(double hbar, int k_max) {
    return reduced_spectrum(hbar, k_max);
}

/// Reconstruction with the -1-representation: reduced level k >= 1 maps to
/// the unreduced level with the odd quantum number 2k-1 below the separatrix
/// (k = 0 has no odd partner and is dropped). Above the separatrix the odd
/// index 2k-1 of the globalized-action lattice is adopted by symmetry.
inline std::vector<quantum_level> reconstruct_odd(const std::vector<reduced_level>& levels,
                                                  const spectrum& sp) {
    std::vector<quantum_level> out;
    for (const auto& rl : levels) {
        if (rl.k == 0) continue;
        if (rl.energy < separatrix_energy) {
            // bookkeeping: I0 at the reduced energy is 2 Itilde = ((2k-1)+1) hbar
            if (std::fabs(action(rl.energy, energy_region::oscillation) - 2.0 * rl.k * sp.hbar) >
                1e-8)
                throw reconstruction_error("reconstruct_odd: action bookkeeping failed at k=" +
                                           std::to_string(rl.k));
            const quantum_level* partner = sp.find(2 * rl.k - 1, energy_region::oscillation);
            if (partner == nullptr)
                throw reconstruction_error("reconstruct_odd: no odd partner for k=" +
                                           std::to_string(rl.k));
            out.push_back(*partner);
        } else {
            if (std::fabs(action(rl.energy, energy_region::rotation_plus) - rl.k * sp.hbar) > 1e-8)
                throw reconstruction_error("reconstruct_odd: action bookkeeping failed at k=" +
                                           std::to_string(rl.k));
            out.push_back({2 * rl.k - 1, energy_region::rotation_plus, rl.energy});
        }
    }
    return out;
}

namespace detail {

// 2 int_{-a0}^{a0} sqrt(2 (e - (1 - cos a))) da, the partial action of the
// arc of H^{-1}(e) between the symmetric pair (+-a0). Strictly increasing
// in a0 on [0, alpha+].
inline double partial_action(double e, double a0, double tol = 1e-11) {
    if (a0 == 0.0) return 0.0;
    auto integrand = [e](double a) {
        return std::sqrt(std::max(0.0, 2.0 * (e - (1.0 - std::cos(a)))));
    };
    return 4.0 * quad(integrand, 0.0, a0, tol);
}

} // namespace detail

/// Number of distinct eta-orbit pairs on the horizontal lift over the
/// Bohr-Sommerfeld torus at energy e: counts the roots a0 in (0, alpha+] of
/// partial_action(a0) = (2m-1) h over integers m. Equals floor((n+1)/2).
inline int orbit_pair_count(double e, double hbar) {
    if (e == 0.0) return 0; // singular torus: no positive odd target exists
    if (!(e > 0.0 && e < separatrix_energy - separatrix_band))
        throw domain_error("orbit_pair_count: requires a sub-separatrix energy");
    const auto n = is_bohr_sommerfeld(e, hbar, 1e-6);
    if (!n)
        throw domain_error("orbit_pair_count: e is not a Bohr-Sommerfeld level");
    const double h = 2.0 * std::numbers::pi * hbar;
    const double ap = turning_angle(e);
    const double total = detail::partial_action(e, ap);
    int count = 0;
    for (int m = 1;; ++m) {
        const double target = (2 * m - 1) * h;
        if (target > total * (1.0 + 1e-9) + 1e-9) break;
        // monotone bisection for the root of partial_action = target
        double lo = 0.0, hi = ap;
        for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
            const double mid = 0.5 * (lo + hi);
            (detail::partial_action(e, mid) < target ? lo : hi) = mid;
        }
        const double root = 0.5 * (lo + hi);
        if (std::fabs(detail::partial_action(e, root) - target) < 1e-6 * std::max(1.0, target))
            ++count;
    }
    return count;
}

} // namespace pendulum
