#pragma once

namespace qshell {

// Deformation q = e^tau, tau real. tau = 0 is the classical (undeformed) limit.
struct DeformationParameter {
    double tau;
    double q;

    explicit DeformationParameter(double tau_value);

    // below this |tau| the q-number is evaluated by its analytic limit
    static constexpr double kClassicalTau = 1e-12;

    bool classical() const;
};

// q-number [x] = (q^x - q^-x)/(q - q^-1) = sinh(x tau)/sinh(tau); -> x as tau -> 0.
// Throws std::invalid_argument on non-finite input.
double q_number(double x, const DeformationParameter& dp);

}  // namespace qshell
