#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>

#include "pendulum/errors.hpp"

namespace pendulum {

/// Modulus k of a complete elliptic integral, constrained to [0, 1].
class elliptic_modulus {
public:
    explicit elliptic_modulus(double k) : k_(k) {
        if (!(k >= 0.0 && k <= 1.0))
            throw domain_error("elliptic_modulus: k must lie in [0,1], got " + std::to_string(k));
    }
    double value() const noexcept { return k_; }

private:
    double k_;
};

namespace detail {

// AGM pair for modulus k. Returns (agm, sum of 2^{n-1} c_n^2) so that
// K = pi/(2 agm) and E = K (1 - sum).
inline std::pair<double, double> agm_with_csum(double k) {
    double a = 1.0;
    double b = std::sqrt((1.0 - k) * (1.0 + k)); // complementary modulus, cancellation-safe
    double c = k;
    double pow2 = 0.5;
    double sum = pow2 * c * c;
    while (std::fabs(a - b) > 1e-15 * a) {
        const double an = 0.5 * (a + b);
        const double bn = std::sqrt(a * b);
        c = 0.5 * (a - b);
        pow2 *= 2.0;
        sum += pow2 * c * c;
        a = an;
        b = bn;
    }
    return {a, sum};
}

} // namespace detail

/// Complete elliptic integral of the first kind,
/// K(k) = int_0^{pi/2} dphi / sqrt(1 - k^2 sin^2 phi), by AGM iteration.
inline double complete_K(elliptic_modulus k) {
    if (k.value() >= 1.0)
        throw domain_error("complete_K: divergent at k=1 (separatrix)");
    const auto [agm, csum] = detail::agm_with_csum(k.value());
    (void)csum;
    return std::numbers::pi / (2.0 * agm);
}

/// Complete elliptic integral of the second kind,
/// E(k) = int_0^{pi/2} sqrt(1 - k^2 sin^2 phi) dphi.
inline double complete_E(elliptic_modulus k) {
    if (k.value() == 1.0)
        return 1.0;
    const auto [agm, csum] = detail::agm_with_csum(k.value());
    return std::numbers::pi / (2.0 * agm) * (1.0 - csum);
}

namespace detail {

struct quad_budget {
    std::int64_t used = 0;
    std::int64_t limit = 0;
};

template <typename F>
double simpson_rec(F& f, double a, double m, double b, double fa, double fm, double fb,
                   double whole, double tol, int depth, quad_budget& budget) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    budget.used += 2;
    if (depth <= 0 && std::fabs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    if (budget.used >= budget.limit)
        throw quadrature_error("quad: refinement budget exhausted",
                               left + right + delta / 15.0, std::fabs(delta));
    return simpson_rec(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1, budget) +
           simpson_rec(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1, budget);
}

} // namespace detail

/// Adaptive Simpson quadrature of f over [a,b] with target absolute error tol.
/// Deterministic: bisection refinement with a fixed subinterval budget.
template <typename F>
double quad(F&& f, double a, double b, double tol, std::int64_t max_intervals = (1 << 20)) {
    if (!(a < b))
        throw domain_error("quad: requires a < b");
    if (!(tol > 0.0))
        throw domain_error("quad: requires tol > 0");
    detail::quad_budget budget{0, max_intervals};
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::simpson_rec(f, a, m, b, fa, fm, fb, whole, tol, 4, budget);
}

/// Incomplete elliptic integral of the first kind,
/// F(phi, k) = int_0^phi dpsi / sqrt(1 - k^2 sin^2 psi). Odd in phi.
inline double incomplete_F(double phi, double k, double tol = 1e-12) {
    if (k >= 1.0)
        throw domain_error("incomplete_F: requires k < 1");
    if (phi == 0.0)
        return 0.0;
    const double s = phi > 0.0 ? 1.0 : -1.0;
    const double k2 = k * k;
    auto integrand = [k2](double psi) {
        const double sp = std::sin(psi);
        return 1.0 / std::sqrt(1.0 - k2 * sp * sp);
    };
    return s * quad(integrand, 0.0, std::fabs(phi), tol);
}

} // namespace pendulum
