#pragma once

#include "gravvac/coeffs.hpp"
#include "gravvac/generators.hpp"

#include <vector>

namespace gravvac {

struct PositivityReport {
    int dim_tested = 0;
    double gamma_t = 0.0;
    double min_eigenvalue = 0.0;
    bool passed = true;  // min_eigenvalue >= -1e-10
    int bound_reading_a = 0;
    int bound_reading_b = 0;
};

/// Max |tr L[rho]| over the Hermitian-symmetrized matrix units.
double check_trace_annihilation(const Liouvillian& L);

/// Max |L[rho]^dagger - L[rho]| over the same probe set.
double check_hermiticity_preservation(const Liouvillian& L);

/// (n+1) x (n+1) first-order thermal matrix. sigma_m = (1 - q) q^m, q = e^{-beta_bar};
/// t = gamma_t / Gamma; shifts are the xi coefficients (raw unless renormalized).
/// x_m = s_m + Gt((m+1)(m+2) s_{m+2} - m(m-1) s_m)
/// y_m = sqrt((m+1)(m+2)(m+3)(m+4)) (i D+ (s_m - s_{m+2}) + (i D- + G/2)(s_{m+4} - s_{m+2})) t
CMatrix build_Sn(double beta_bar, double gamma_t, int n, const VacuumCoefficients& c, bool renormalized = true);

/// det S_n as the product of the four residue-class continuants
/// D_k = x_k D_{k-1} - |y_{k-1}|^2 D_{k-2}.
double sn_determinant_recursive(const CMatrix& S);

struct NmaxBound {
    double value_a = 0.0, value_b = 0.0;
    int reading_a = 0, reading_b = 0;
};

/// r = e^{-2 beta_bar}:
/// a: (1 + 3r + sqrt(1 + r^2) + 14 r) / (2 (1 - r))
/// b: (1 + 3r + sqrt(1 + r^2 + 14 r)) / (2 (1 - r))
NmaxBound n_max_bound(double beta_bar);

/// Largest m with m(m-1) - (m+1)(m+2) r <= 1/(Gamma t), i.e. every x_k >= 0 for k <= m.
int x_condition_bound(double beta_bar, double gamma_t, int ceiling = 100000);

struct EmpiricalSweep {
    int n_max = 0;                       // largest passing n
    std::vector<double> min_eigenvalues; // index n = 0..last swept
    bool hit_ceiling = false;
};

/// Sweeps n = 0, 1, ... applying the xi_full generator to the Gibbs seed on a space
/// of dim n + 5 and testing the leading (n+1) block of sigma + t L[sigma].
EmpiricalSweep empirical_sweep(double beta_bar, double gamma_t, const VacuumCoefficients& c, int ceiling = 60,
                               bool renormalized = true);
int empirical_n_max(double beta_bar, double gamma_t, const VacuumCoefficients& c, int ceiling = 60,
                    bool renormalized = true);

PositivityReport positivity_report(double beta_bar, double gamma_t, int n, const VacuumCoefficients& c,
                                   bool renormalized = true);

} // namespace gravvac
