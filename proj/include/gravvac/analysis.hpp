#pragma once

#include "gravvac/dynamics.hpp"
#include "gravvac/freepart.hpp"
#include "gravvac/generators.hpp"

#include <set>
#include <string>
#include <vector>

namespace gravvac {

struct SpectralLadder {
    std::vector<int> levels;
    std::vector<double> transition_freqs;  // Im lambda, units omega
    std::vector<double> decay_rates;       // Re lambda
    std::vector<double> overlaps;          // weight of |n><n+1| in the assigned eigenvector
    std::vector<bool> ambiguous;           // overlap below threshold
    double threshold = 0.9;
};

/// Default threshold: 0.9 for rwa and Lindblad variants, 0.7 for full ones.
double ladder_threshold(Variant v);

/// Eigenvalues of the first coherence sector (closure of the |n><n+1| units under L).
/// Weights are biorthogonal: |l_k(u) r_k(u)| / sum_u |l_k(u) r_k(u)|.
/// threshold <= 0 selects ladder_threshold(L.variant()).
SpectralLadder extract_ladder(const Liouvillian& L, double threshold = 0.0);

struct CutoffFit {
    FreeVariant variant = FreeVariant::x;
    std::vector<double> lambda_grid;
    std::vector<double> shift_values;
    std::string model;                 // "log" or "cubic"
    std::vector<double> fit_params;    // log: {a, b}; cubic: {a3, a2, a1, a0, alog}
    double residual = 0.0;             // rms residual / max |shift|
    double exponent = 0.0;             // log-log slope over the top decade
    std::string status = "ok";         // or "degenerate data"
};

/// delta_-^R (x) or Delta_-^R (xi) over the grid, fitted with
/// log: a ln(lambda - 2) + b, or cubic: a3 l^3 + a2 l^2 + a1 l + a0 + alog ln(l - 2).
CutoffFit cutoff_sweep(FreeVariant v, const std::vector<double>& lambda_grid, double gamma_bar = 1.0);

/// n log-spaced points on [lo, hi].
std::vector<double> log_grid(double lo, double hi, int n);

struct ChannelReport {
    double max_population_change = 0.0;
    double population_rate = 0.0;  // -ln(rho_kk(T)/rho_kk(0))/T for the top populated level k
    double coherence_rate = 0.0;   // same for |rho_ab|, the largest initial coherence
    int population_level = 0;
    int coherence_row = 0, coherence_col = 0;
};

struct DiscriminatorReport {
    ChannelReport amplitude;
    ChannelReport phase;
    bool discriminated = false;  // phase keeps populations (< 1e-12) and amplitude does not
};

/// Evolves rho0 under lindblad_amp(rate) and lindblad_pha(rate) to the horizon.
/// Requires a nonzero rho_02 and population above level 1.
DiscriminatorReport channel_discriminator(const DensityMatrix& rho0, double rate, double horizon,
                                          const EvolveOptions& opt = {});

/// Coherence orders |n - m| reached from rho through L, L^2, ..., L^depth.
std::set<int> populated_coherence_orders(const Liouvillian& L, const DensityMatrix& rho, int depth = 1,
                                         double threshold = 1e-14);

} // namespace gravvac
