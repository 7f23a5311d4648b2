#pragma once

#include <vector>

namespace gravvac {

struct PTShift {
    int n_b = 0;
    int n_a = 0;
    double value = 0.0;  // units hbar omega
};

/// Second-order level shift of |n_a, n_b> for H0 = Omega a+a + omega b+b and
/// coupling gamma Omega (a - a+)(b b - b+ b+), hbar = 1:
/// -g^2 W^2 (4 na nb + 2 na + nb^2 + 3 nb + 2)/(2w + W) + g^2 W^2 (4 na nb + 2 na - nb^2 + nb)/(W - 2w).
/// Throws DomainError when |Omega - 2 omega| < resonance_tol.
double single_mode_shift(int n_a, int n_b, double omega, double Omega, double gamma, double resonance_tol = 1e-12);

/// The four intermediate-state contributions, summed.
double single_mode_shift_terms(int n_a, int n_b, double omega, double Omega, double gamma);

/// (Dm - Dp) n^2 - (3 Dp + Dm) n; the n-independent -2 Dp piece is dropped.
double multimode_shift(int n_b, double delta_plus, double delta_minus);

/// Level-independent and level-dependent parts of the rwa ladder, omega_{n->n+1} = omega + both.
struct RwaLadderTerms {
    double level_independent = 0.0;  // -delta_minus
    double level_dependent = 0.0;    // delta_minus (2n + 1)
};
RwaLadderTerms rwa_ladder_terms(int n, double delta_minus);

struct BruteForceOptions {
    int field_levels = 12;
    int osc_levels = 12;
    std::vector<double> gammas{1e-3, 5e-4, 2.5e-4};
};

/// O(gamma^2) coefficient of the level |n_a, n_b> from dense diagonalization of the
/// two-mode Hamiltonian, Richardson-extrapolated over the halving gamma sequence.
/// Returns E2 at gamma = 1, comparable to single_mode_shift(..., gamma = 1).
double brute_force_second_order(int n_a, int n_b, double omega, double Omega, const BruteForceOptions& opt = {});

} // namespace gravvac
