#include "qshell/spectrum.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qshell {

namespace {

void require_valid_nl(int n, int l) {
    if (n < 0 || l < 0 || l > n || (n - l) % 2 != 0)
        throw std::invalid_argument("invalid (n,l) pair: n=" + std::to_string(n) +
                                    " l=" + std::to_string(l));
}

// Band enumeration stops once two consecutive band heads (l=n, the band minimum
// for tau >= 0 / mu' >= 0) exceed e_cut; the double check guards small-tau edge
// cases. The cap catches parameter regimes where band minima stop growing.
constexpr int kMaxBands = 400;

}  // namespace

double energy_q_exact(int n, int l, const DeformationParameter& dp) {
    require_valid_nl(n, l);
    if (dp.classical()) return static_cast<double>(n);
    // q(q - q^-1)/[2] = q * 2sinh(tau) / 2cosh(tau) = q tanh(tau)
    const double casimir = q_number(l, dp) * q_number(l + 1, dp);  // so_q(3) eigenvalue [l][l+1]
    return q_number(n, dp) * std::exp((n + 1) * dp.tau) - dp.q * std::tanh(dp.tau) * casimir;
}

double energy_q_taylor(int n, int l, double tau) {
    require_valid_nl(n, l);
    if (!std::isfinite(tau)) throw std::invalid_argument("energy_q_taylor: tau must be finite");
    const double ll = static_cast<double>(l) * (l + 1);
    const double nn = static_cast<double>(n) * (n + 1);
    return n - tau * (ll - nn) - tau * tau * (ll - nn * (2 * n + 1) / 3.0);
}

double energy_nilsson(int n, int l, double mu_prime) {
    require_valid_nl(n, l);
    if (!std::isfinite(mu_prime) || mu_prime < 0)
        throw std::invalid_argument("energy_nilsson: mu_prime must be finite and >= 0");
    const double ll = static_cast<double>(l) * (l + 1);
    const double avg = static_cast<double>(n) * (n + 3) / 2.0;  // <L^2>_N
    return n - mu_prime * (ll - avg);
}

double energy_plain_ho(int n, int l) {
    require_valid_nl(n, l);
    return static_cast<double>(n);
}

namespace {

double model_energy(ModelId model, const ModelParams& params, int n, int l) {
    switch (model) {
        case ModelId::Q_EXACT:
            return energy_q_exact(n, l, DeformationParameter(params.tau));
        case ModelId::Q_TAYLOR2:
            return energy_q_taylor(n, l, params.tau);
        case ModelId::NILSSON:
            if (!params.has_mu_prime)
                throw std::invalid_argument("enumerate_levels: NILSSON requires mu_prime");
            return energy_nilsson(n, l, params.mu_prime);
        case ModelId::PLAIN_HO:
            return energy_plain_ho(n, l);
        case ModelId::PSEUDO_3NL:
            break;
    }
    throw std::invalid_argument("enumerate_levels: model has no (n,l) energy rule");
}

std::vector<Level> enumerate_pseudo_3nl(double e_cut) {
    // pseudo-energy = k = 3n+l; all (n >= 0, l >= 0) pairs, no parity rule
    std::vector<Level> out;
    const int k_max = static_cast<int>(std::floor(e_cut));
    for (int k = 0; k <= k_max; ++k)
        for (int n = 0; 3 * n <= k; ++n) {
            const int l = k - 3 * n;
            out.push_back({n, l, static_cast<double>(k), level_degeneracy(l)});
        }
    return out;
}

}  // namespace

std::vector<Level> enumerate_levels(ModelId model, const ModelParams& params, double e_cut) {
    if (!std::isfinite(e_cut) || e_cut <= 0)
        throw std::invalid_argument("enumerate_levels: e_cut must be positive");
    if (model == ModelId::PSEUDO_3NL) return enumerate_pseudo_3nl(e_cut);
    if ((model == ModelId::Q_EXACT || model == ModelId::Q_TAYLOR2) && params.tau < 0)
        throw std::invalid_argument(
            "enumerate_levels: tau must be >= 0 (band minima are bounded for tau < 0, "
            "so the level count below e_cut diverges)");

    std::vector<Level> out;
    int misses = 0;
    for (int n = 0; misses < 2; ++n) {
        if (n > kMaxBands)
            throw std::invalid_argument(
                "enumerate_levels: band cap exceeded, parameters give no finite spectrum below e_cut");
        if (model_energy(model, params, n, n) > e_cut) {
            ++misses;
            continue;
        }
        misses = 0;
        for (int l = n; l >= 0; l -= 2) {
            const double e = model_energy(model, params, n, l);
            if (e <= e_cut) out.push_back({n, l, e, level_degeneracy(l)});
        }
    }
    return out;
}

std::vector<FillRow> pseudo_3nl_fill(int k_max) {
    if (k_max < 0) throw std::invalid_argument("pseudo_3nl_fill: k_max must be >= 0");
    std::vector<FillRow> rows;
    rows.reserve(k_max + 1);
    long long cumulative = 0;
    for (int k = 0; k <= k_max; ++k) {
        long long occupancy = 0;
        for (int n = 0; 3 * n <= k; ++n) occupancy += level_degeneracy(k - 3 * n);
        cumulative += occupancy;
        rows.push_back({k, occupancy, cumulative});
    }
    return rows;
}

}  // namespace qshell
