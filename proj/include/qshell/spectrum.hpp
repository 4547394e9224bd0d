#pragma once

#include <vector>

#include "qshell/qmath.hpp"

namespace qshell {

// One (n,l) eigenstate. Oscillator-family models restrict l to n, n-2, ..., 1 or 0;
// the 3n+l scheme uses unrestricted l >= 0 with n counting radial nodes.
struct Level {
    int n;
    int l;
    double energy;      // units of hbar*omega0 = 1
    int degeneracy;     // 2(2l+1), factor 2 for spin
};

enum class ModelId { Q_EXACT, Q_TAYLOR2, NILSSON, PLAIN_HO, PSEUDO_3NL };

struct ModelParams {
    double tau = 0.0;       // Q_EXACT, Q_TAYLOR2
    double mu_prime = -1.0; // NILSSON; must be set >= 0 by the caller, no default
    bool has_mu_prime = false;
};

inline int level_degeneracy(int l) { return 2 * (2 * l + 1); }

// E_q(n,l) = [n] q^{n+1} - (q(q - q^-1)/[2]) [l][l+1].
// The bracket coefficient equals q*tanh(tau), which is how it is evaluated.
double energy_q_exact(int n, int l, const DeformationParameter& dp);

// Second-order expansion in tau:
// n - tau(l(l+1) - n(n+1)) - tau^2(l(l+1) - n(n+1)(2n+1)/3).
double energy_q_taylor(int n, int l, double tau);

// Nilsson modified oscillator without spin-orbit:
// n - mu'(l(l+1) - n(n+3)/2), the subtracted average being <L^2>_N = N(N+3)/2.
double energy_nilsson(int n, int l, double mu_prime);

double energy_plain_ho(int n, int l);

// Every valid level with energy <= e_cut, over all bands whose minimum-energy
// member is <= e_cut. Unsorted (band order). Deformed models require tau >= 0:
// for tau < 0 band minima converge to a finite limit and enumeration diverges.
std::vector<Level> enumerate_levels(ModelId model, const ModelParams& params, double e_cut);

struct FillRow {
    int k;                  // pseudo quantum number 3n+l
    long long occupancy;    // sum of 2(2l+1) over the k-group
    long long cumulative;
};

// Cumulative totals after each completed 3n+l group, k = 0..k_max.
std::vector<FillRow> pseudo_3nl_fill(int k_max);

}  // namespace qshell
