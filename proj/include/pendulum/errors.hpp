#pragma once

#include <stdexcept>
#include <string>

namespace pendulum {

/// Argument outside an operation's mathematical domain.
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Adaptive quadrature exhausted its refinement budget. Carries the best
/// estimate obtained and the associated error bound.
class quadrature_error : public std::runtime_error {
public:
    quadrature_error(const std::string& msg, double estimate, double error_bound)
        : std::runtime_error(msg), estimate_(estimate), error_bound_(error_bound) {}
    double estimate() const noexcept { return estimate_; }
    double error_bound() const noexcept { return error_bound_; }

private:
    double estimate_;
    double error_bound_;
};

/// Step-size underflow or non-finite state in the adaptive ODE integrator.
class integration_error : public std::runtime_error {
public:
    integration_error(const std::string& msg, double t_fail)
        : std::runtime_error(msg + " at t=" + std::to_string(t_fail)), t_fail_(t_fail) {}
    double failure_time() const noexcept { return t_fail_; }

private:
    double t_fail_;
};

/// Requested quantum number has no energy solution in the given region.
class no_level_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// hbar collides with a separatrix action limit (or leaves the lattice empty).
class rejected_hbar_error : public std::runtime_error {
public:
    rejected_hbar_error(const std::string& msg, int offending_n)
        : std::runtime_error(msg), offending_n_(offending_n) {}
    int offending_n() const noexcept { return offending_n_; }

private:
    int offending_n_;
};

/// Reduced/unreduced level energies failed to match during reconstruction.
class reconstruction_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Transitivity search exhausted the truncated lattice without a witness.
class search_exhausted_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace pendulum
