// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Runs the full pipeline end to end in well under a minute.

#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <string>
#include <vector>

#include "pendulum/classical.hpp"
#include "pendulum/holonomy.hpp"
#include "pendulum/minus_one.hpp"
#include "pendulum/operators.hpp"
#include "pendulum/reduction.hpp"
#include "pendulum/rng.hpp"
#include "pendulum/spectrum.hpp"
#include "pendulum/verify.hpp"

using namespace pendulum;

namespace {

constexpr double pi = std::numbers::pi;
int failures = 0;

void report(int id, const std::string& what, bool pass, double residual, double tol) {
    std::printf("[%s] criterion %2d: %s (residual %.3e, tolerance %.0e)\n",
                pass ? "PASS" : "FAIL", id, what.c_str(), residual, tol);
    if (!pass) ++failures;
}

std::string run_and_capture(const std::string& args, int& exit_code) {
    const std::string cmd = std::string(PENDULUM_BSH_CLI) + " " + args + " 2>/dev/null";
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) {
        exit_code = -1;
        return out;
    }
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    exit_code = WEXITSTATUS(pclose(pipe));
    return out;
}

} // namespace

int main() {
    const double hbar = 0.4;

    // 1. separatrix action limits
    {
        const double r1 = std::fabs(component_action(2.0 - 1e-6) - 8.0 / pi);
        const double r2 = std::fabs(component_action(2.0 + 1e-6) - 4.0 / pi);
        report(1, "separatrix limits I0 -> 8/pi, I+- -> 4/pi", r1 < 1e-3 && r2 < 1e-3,
               std::max(r1, r2), 1e-3);
    }

    // 2. harmonic and rotor limits
    {
        const double r1 = std::fabs(component_action(1e-3) / 1e-3 - 1.0);
        const double r2 = std::fabs(component_action(200.0) / std::sqrt(400.0) - 1.0);
        const double r3 = std::fabs(period(1e-4) - 2.0 * pi);
        report(2, "harmonic/rotor limits of I and T", r1 < 1e-3 && r2 < 1e-2 && r3 < 1e-3,
               std::max({r1, r2, r3}), 1e-2);
    }

    // 3. period-action identity on a 40-point grid
    {
        double worst = 0.0;
        const double h = 1e-5;
        for (int i = 0; i < 40; ++i) {
            const double e = i < 20 ? 0.1 + 1.8 * i / 19.0 : 2.1 + 3.9 * (i - 20) / 19.0;
            const double dI =
                (component_action(e + h) - component_action(e - h)) / (2.0 * h);
            const double ref = period(e) / (2.0 * pi);
            worst = std::max(worst, std::fabs(dI - ref) / ref);
        }
        report(3, "period-action identity dI/de = T/2pi", worst < 1e-4, worst, 1e-4);
    }

    // 4. holonomy equivalence
    {
        const spectrum sp = build_spectrum(hbar, 8);
        double worst_level = 0.0;
        for (const auto& l : sp.levels) {
            if (l.energy == 0.0 || l.region == energy_region::rotation_minus) continue;
            worst_level = std::max(
                worst_level,
                std::abs(parallel_transport(l.energy, complexd(1.0, 0.0), hbar, 1e-12) -
                         complexd(1.0, 0.0)));
        }
        // 20 mid-gap energies: action = (k + 1/2) hbar, oscillation side for
        // the low targets, rotation side for the rest
        bool gaps_ok = true;
        int gaps = 0;
        for (int k = 0; k < 6; ++k) { // 0.2 .. 2.2, all below 8/pi
            double lo = 1e-9, hi = 2.0 - 1e-9;
            const double target = (k + 0.5) * hbar;
            while (hi - lo > 1e-12) {
                const double mid = 0.5 * (lo + hi);
                (component_action(mid) < target ? lo : hi) = mid;
            }
            ++gaps;
            if (std::abs(holonomy_phase(0.5 * (lo + hi), hbar) - complexd(1.0, 0.0)) <= 0.1)
                gaps_ok = false;
        }
        for (int k = 4; k < 18; ++k) { // rotation mid-gaps 1.8 .. 7.4 > 4/pi
            double lo = 2.0 + 1e-9, hi = 64.0;
            const double target = (k + 0.5) * hbar;
            while (hi - lo > 1e-12) {
                const double mid = 0.5 * (lo + hi);
                (component_action(mid) < target ? lo : hi) = mid;
            }
            ++gaps;
            if (std::abs(holonomy_phase(0.5 * (lo + hi), hbar) - complexd(1.0, 0.0)) <= 0.1)
                gaps_ok = false;
        }
        sampler rng(sampler::seed_from_env());
        double worst_pair = 0.0;
        for (int i = 0; i < 50; ++i) {
            const double e = i % 2 == 0 ? rng.uniform(0.05, 1.9) : rng.uniform(2.1, 8.0);
            worst_pair = std::max(
                worst_pair, std::abs(parallel_transport(e, complexd(1.0, 0.0), hbar, 1e-12) -
                                     holonomy_phase(e, hbar)));
        }
        report(4, "holonomy: levels trivial, gaps nontrivial, ODE vs analytic",
               worst_level < 1e-5 && gaps_ok && gaps >= 20 && worst_pair < 1e-5,
               std::max(worst_level, worst_pair), 1e-5);
    }

    // 5. operator algebra (even and odd N)
    {
        bool ok = true;
        double pairing = 0.0;
        for (const double hb : {0.4, 0.5}) { // N = 6 (even), N = 5 (odd)
            const auto checks = verify_operators(hb, sampler::seed_from_env());
            for (const auto& c : checks) {
                ok = ok && c.pass;
                if (c.name.rfind("adjoint pairing", 0) == 0)
                    pairing = std::max(pairing, c.residual);
            }
        }
        report(5, "ladder algebra: exact commutators, adjoints, boundaries, transitivity", ok,
               pairing, 1e-14);
    }

    // 6. reduction suite
    {
        const auto checks = verify_reduction(hbar, sampler::seed_from_env());
        bool ok = true;
        double worst = 0.0;
        for (const auto& c : checks) {
            ok = ok && c.pass;
            if (c.tolerance > 0.0) worst = std::max(worst, c.residual / c.tolerance);
        }
        report(6, "reduction: Casimir, bracket laws, equivariance, action identity", ok, worst,
               1.0);
    }

    // 7. parity reconstruction
    {
        const spectrum sp = build_spectrum(hbar, 12);
        const auto even = reconstruct_even(reduced_spectrum(hbar, 12), sp);
        const auto odd = reconstruct_odd(odd_reduced_spectrum(hbar, 12), sp);
        bool ok = true;
        double worst = 0.0;
        for (const auto& l : sp.levels) {
            if (l.region != energy_region::oscillation) continue;
            double best = 1e300;
            for (const auto& cand : (l.n % 2 == 0 ? even : odd))
                if (cand.region == energy_region::oscillation)
                    best = std::min(best, std::fabs(cand.energy - l.energy));
            worst = std::max(worst, best);
            if (best > 1e-8) ok = false;
        }
        report(7, "even/odd reconstructions reproduce the sub-separatrix spectrum", ok, worst,
               1e-8);
    }

    // 8. orbit-pair-count claim
    {
        const spectrum sp = build_spectrum(hbar, 8);
        bool ok = true;
        for (const auto& l : sp.levels) {
            if (l.region != energy_region::oscillation) continue;
            if (orbit_pair_count(l.energy, hbar) != (l.n + 1) / 2) ok = false;
        }
        report(8, "orbit pair count = floor((n+1)/2) on every level", ok, ok ? 0.0 : 1.0, 1.0);
    }

    // 9. stratification and bundle isomorphism
    {
        sampler rng(sampler::seed_from_env() + 9);
        bool dichotomy = true;
        double rt = 0.0;
        for (int i = 0; i < 1000; ++i) {
            complexd z(rng.uniform(-2, 2), rng.uniform(-2, 2));
            phase_point pt(rng.uniform(-2.5, 2.5), rng.uniform(-3.1, 3.1));
            switch (i % 5) {
                case 1: pt = phase_point(0.0, pt.alpha); break;
                case 2: z = complexd(0.0, 0.0); break;
                case 3: pt = phase_point(0.0, 0.0); break;
                case 4: pt = phase_point(0.0, pi); break;
                default: break;
            }
            const invariant_tuple t = invariants8(z, pt);
            const bool tau_regular = !(pt.p == 0.0 && (pt.alpha == 0.0 || pt.alpha == -pi));
            const bool sbar = t.sigma[0] != 0.0 || t.sigma[1] != 0.0 || t.sigma[2] != 0.0;
            const bool expect_regular = tau_regular && sbar && pt.p != 0.0;
            if ((jacobian_rank(t, 1e-8).cls == stratum::regular) != expect_regular)
                dichotomy = false;
        }
        for (int i = 0; i < 1000; ++i) {
            const double p = (rng.uniform01() < 0.5 ? 1.0 : -1.0) * rng.uniform(0.3, 3.0);
            const complexd z(rng.uniform(0.2, 2.0), rng.uniform(0.2, 2.0));
            const invariant_tuple t = invariants8(z, phase_point(p, rng.uniform(-3.1, 3.1)));
            const invariant_tuple t2 = psi(pi_inverse(t));
            for (int q = 0; q < 3; ++q) rt = std::max(rt, std::fabs(t.tau[q] - t2.tau[q]));
            for (int q = 0; q < 5; ++q) rt = std::max(rt, std::fabs(t.sigma[q] - t2.sigma[q]));
        }
        report(9, "stratification dichotomy and Psi/Pi round trips", dichotomy && rt < 1e-12, rt,
               1e-12);
    }

    // 10. determinism of the CLI verification report
    {
        setenv("PENDULUM_BSH_SEED", "424242", 1);
        int code_a = -1, code_b = -1;
        const std::string a = run_and_capture("verify all --hbar 0.4", code_a);
        const std::string b = run_and_capture("verify all --hbar 0.4", code_b);
        unsetenv("PENDULUM_BSH_SEED");
        const bool ok = code_a == 0 && code_b == 0 && !a.empty() && a == b;
        report(10, "verify --hbar 0.4 all: exit 0 twice, byte-identical reports", ok,
               ok ? 0.0 : 1.0, 1.0);
    }

    if (failures == 0)
        std::printf("acceptance: all 10 criteria passed\n");
    else
        std::printf("acceptance: %d criterion(s) FAILED\n", failures);
    return failures == 0 ? 0 : 1;
}
