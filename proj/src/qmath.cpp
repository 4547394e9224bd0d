#include "qshell/qmath.hpp"

#include <cmath>
#include <stdexcept>

namespace qshell {

DeformationParameter::DeformationParameter(double tau_value) : tau(tau_value), q(0.0) {
    if (!std::isfinite(tau_value)) throw std::invalid_argument("DeformationParameter: tau must be finite");
    q = std::exp(tau_value);
}

bool DeformationParameter::classical() const { return std::abs(tau) < kClassicalTau; }

double q_number(double x, const DeformationParameter& dp) {
    if (!std::isfinite(x)) throw std::invalid_argument("q_number: x must be finite");
    if (dp.classical()) return x;  // lim_{tau->0} sinh(x tau)/sinh(tau) = x
    // sinh ratio form; stabler than (q^x - q^-x)/(q - q^-1) near tau = 0
    return std::sinh(x * dp.tau) / std::sinh(dp.tau);
}

}  // namespace qshell
