#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "pendulum/classical.hpp"
#include "pendulum/elliptic.hpp"
#include "pendulum/ode.hpp"

using namespace pendulum;
using Catch::Approx;

namespace {

constexpr double pi = std::numbers::pi;

// quadrature oracle for the oscillation action, straight from its phi-form
double I0_oracle(double e, double tol = 1e-12) {
    return 4.0 * e / pi *
           quad(
               [e](double p) {
                   const double s = std::sin(p);
                   return std::cos(p) * std::cos(p) / std::sqrt(1.0 - 0.5 * e * s * s);
               },
               0.0, pi / 2, tol);
}

// quadrature oracle for the rotation action
double Ipm_oracle(double e, double tol = 1e-12) {
    return 2.0 * std::sqrt(2.0 * e) / pi *
           quad(
               [e](double p) {
                   const double s = std::sin(p);
                   return std::sqrt(1.0 - 2.0 / e * s * s);
               },
               0.0, pi / 2, tol);
}

} // namespace

TEST_CASE("phase points normalize and compare modulo 2 pi") {
    CHECK(phase_point(0.3, 1.0) == phase_point(0.3, 1.0 + 2.0 * pi));
    CHECK(phase_point(0.0, -pi) == phase_point(0.0, pi));
    CHECK(phase_point(1.0, 0.1).alpha == Approx(0.1));
    CHECK(phase_point(1.0, 5.0).alpha == Approx(5.0 - 2.0 * pi));
}

TEST_CASE("hamiltonian values") {
    CHECK(hamiltonian(phase_point(0.0, 0.0)) == 0.0);
    CHECK(hamiltonian(phase_point(0.0, pi)) == Approx(2.0).margin(1e-15));
    CHECK(hamiltonian(phase_point(1.0, pi / 2)) == Approx(1.5).margin(1e-15));
}

TEST_CASE("vector field") {
    CHECK(vector_field(phase_point(0.0, 0.0)).dp == 0.0);
    CHECK(vector_field(phase_point(0.0, 0.0)).dalpha == 0.0);
    CHECK(vector_field(phase_point(0.0, pi)).dp == Approx(0.0).margin(1e-15));
    const auto v = vector_field(phase_point(2.0, pi / 2));
    CHECK(v.dp == Approx(-1.0).margin(1e-15));
    CHECK(v.dalpha == 2.0);
}

TEST_CASE("region classification is total") {
    CHECK(classify(0.0, 0.0) == energy_region::stable_equilibrium);
    CHECK(classify(1.0, 0.5) == energy_region::oscillation);
    CHECK(classify(2.0, 0.5) == energy_region::separatrix);
    CHECK(classify(2.0 + 5e-10, 0.5) == energy_region::separatrix);
    CHECK(classify(3.0, 0.5) == energy_region::rotation_plus);
    CHECK(classify(3.0, -0.5) == energy_region::rotation_minus);
}

TEST_CASE("turning angle") {
    CHECK(turning_angle(1.0) == Approx(pi / 2).margin(1e-15));
    CHECK(turning_angle(1.5) == Approx(2.0 * pi / 3).epsilon(1e-14));
    CHECK(turning_angle(1e-8) == Approx(0.0).margin(1e-3));
    CHECK_THROWS_AS(turning_angle(0.0), domain_error);
    CHECK_THROWS_AS(turning_angle(2.0), domain_error);
}

TEST_CASE("period limits and monotonicity") {
    CHECK(period(1e-4) == Approx(2.0 * pi).margin(1e-3));
    CHECK(period(1.0) == Approx(4.0 * complete_K(elliptic_modulus(1.0 / std::numbers::sqrt2)))
                             .epsilon(1e-14));
    CHECK(period(1.999) < period(1.9999));       // T grows toward the separatrix
    CHECK(period(2.0001) > period(2.001));       // and decays away from it above
    CHECK(period(3.0) == Approx(3.3132763404731883).epsilon(1e-12)); // frozen oracle value
    // rotor scaling: T ~ 2 pi / sqrt(2e), one full revolution at speed sqrt(2e)
    CHECK(period(1e4) * std::sqrt(1e4) == Approx(std::numbers::pi * std::numbers::sqrt2)
                                              .epsilon(1e-3));
    CHECK_THROWS_AS(period(0.0), domain_error);
    CHECK_THROWS_AS(period(2.0), domain_error);
}

TEST_CASE("period matches one flow loop at e = 1") {
    const phase_point start(std::sqrt(2.0), 0.0);
    const double T = period(1.0);
    const phase_point back = flow(start, T, 1e-12);
    CHECK(back.p == Approx(start.p).margin(1e-6));
    CHECK(back.alpha == Approx(start.alpha).margin(1e-6));
}

TEST_CASE("action limits and oracle agreement") {
    CHECK(action(1.0, energy_region::oscillation) == Approx(1.0787052023767587).epsilon(1e-12));
    CHECK(action(2.0 - 1e-6, energy_region::oscillation) ==
          Approx(oscillation_action_sup).margin(1e-3));
    CHECK(action(2.0 + 1e-6, energy_region::rotation_plus) ==
          Approx(rotation_action_inf).margin(1e-3));
    CHECK(action(1e-3, energy_region::oscillation) / 1e-3 == Approx(1.0).margin(1e-3));
    CHECK(action(200.0, energy_region::rotation_minus) / std::sqrt(400.0) ==
          Approx(1.0).margin(1e-2));
    for (const double e : {0.2, 0.8, 1.5, 1.95})
        CHECK(action(e, energy_region::oscillation) == Approx(I0_oracle(e)).epsilon(1e-10));
    for (const double e : {2.2, 3.0, 7.5})
        CHECK(action(e, energy_region::rotation_plus) == Approx(Ipm_oracle(e)).epsilon(1e-10));
    CHECK_THROWS_AS(action(3.0, energy_region::oscillation), domain_error);
    CHECK_THROWS_AS(action(1.0, energy_region::rotation_plus), domain_error);
    CHECK_THROWS_AS(action(2.0, energy_region::separatrix), domain_error);
}

TEST_CASE("full action is continuous at the separatrix") {
    CHECK(std::fabs(full_action(2.0 - 1e-8) - full_action(2.0 + 1e-8)) < 1e-3);
    CHECK(full_action(2.0) == Approx(oscillation_action_sup).epsilon(1e-12));
}

TEST_CASE("period-action identity") {
    const double h = 1e-5;
    for (int i = 0; i < 40; ++i) {
        const double e = i < 20 ? 0.1 + 1.8 * i / 19.0 : 2.1 + 3.9 * (i - 20) / 19.0;
        const double dI = (component_action(e + h) - component_action(e - h)) / (2.0 * h);
        const double ref = period(e) / (2.0 * pi);
        CHECK(std::fabs(dI - ref) / ref < 1e-4);
    }
}

TEST_CASE("flow conserves energy and reverses") {
    const phase_point pt(0.7, 1.1);
    const double e = hamiltonian(pt);
    const double tol = 1e-10;
    const phase_point fwd = flow(pt, 37.0, tol);
    CHECK(std::fabs(hamiltonian(fwd) - e) < 10.0 * tol);
    const phase_point back = flow(fwd, -37.0, tol);
    CHECK(back.p == Approx(pt.p).margin(1e-8));
    CHECK(back.alpha == Approx(pt.alpha).margin(1e-8));
    // fixed point stays put
    const phase_point eq = flow(phase_point(0.0, 0.0), 5.0, tol);
    CHECK(eq.p == Approx(0.0).margin(1e-12));
    CHECK(eq.alpha == Approx(0.0).margin(1e-12));
}

TEST_CASE("angle reference and half-period advance") {
    const double e = 1.0;
    const double ap = turning_angle(e);
    CHECK(angle(phase_point(0.0, -ap)) == Approx(0.0).margin(1e-10));

    const phase_point pt(std::sqrt(2.0), 0.0);
    const double half = period(e) / 2.0;
    const double a0 = angle(pt);
    const double a1 = angle(flow(pt, half, 1e-12));
    double d = std::fmod(a1 - a0 + 2.0 * pi, 2.0 * pi);
    CHECK(d == Approx(pi).margin(1e-6));
}

TEST_CASE("angle advances linearly along the flow in every region") {
    for (const double e : {0.5, 1.3, 2.6, 5.0}) {
        phase_point pt(0.0, 0.0);
        if (e < 2.0)
            pt = phase_point(std::sqrt(2.0 * e), 0.0);
        else
            pt = phase_point(-std::sqrt(2.0 * (e - 1.0)), pi / 2); // rotation minus branch too
        const double T = period(e);
        const double t = 0.23 * T;
        const double want = std::fmod(angle(pt) + 2.0 * pi * t / T, 2.0 * pi);
        const double got = angle(flow(pt, t, 1e-12));
        const double diff = std::fabs(got - want);
        CHECK(std::min(diff, 2.0 * pi - diff) < 1e-6);
    }
}

TEST_CASE("angle approaches the harmonic phase as e -> 0") {
    const double e = 1e-6;
    const double pmax = std::sqrt(2.0 * e);
    // quarter period past the reference turning point: bottom, moving right
    CHECK(angle(phase_point(pmax, 0.0)) == Approx(pi / 2).margin(1e-4));
    CHECK(angle(phase_point(0.0, turning_angle(e))) == Approx(pi).margin(1e-4));
    CHECK(angle(phase_point(-pmax, 0.0)) == Approx(3.0 * pi / 2).margin(1e-4));
    // generic point: alpha(t) = -alpha+ cos(t), so alpha = alpha+/2 at t = 2pi/3
    const double a = turning_angle(e) / 2.0;
    const double p = std::sqrt(2.0 * (e - (1.0 - std::cos(a))));
    CHECK(angle(phase_point(p, a)) == Approx(2.0 * pi / 3).margin(1e-4));
}

TEST_CASE("integrator failure names the failure time") {
    // dy/dt = y^2 blows up at t = 1; the step size underflows approaching it
    auto rhs = [](double, const ode_state<1>& y) { return ode_state<1>{y[0] * y[0]}; };
    try {
        integrate<1>(rhs, ode_state<1>{1.0}, 0.0, 2.0, 1e-10);
        FAIL("expected integration_error");
    } catch (const integration_error& e) {
        CHECK(e.failure_time() == Approx(1.0).margin(1e-3));
        CHECK(std::string(e.what()).find("t=") != std::string::npos);
    }
}

TEST_CASE("angle rejects equilibria and the separatrix") {
    CHECK_THROWS_AS(angle(phase_point(0.0, 0.0)), domain_error);
    CHECK_THROWS_AS(angle(phase_point(0.0, pi)), domain_error);
}

TEST_CASE("action-angle pair") {
    const auto aa = action_angle(phase_point(std::sqrt(2.0), 0.0));
    CHECK(aa.action == Approx(1.0787052023767587).epsilon(1e-12));
    CHECK(aa.angle >= 0.0);
    CHECK(aa.angle < 2.0 * pi);
}
