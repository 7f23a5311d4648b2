#pragma once

#include "gravvac/generators.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gravvac {

struct StepDiagnostics {
    double trace_drift = 0.0;        // |tr rho(t) - tr rho(0)|
    double hermiticity_drift = 0.0;  // max |rho - rho^dagger|
    double min_eigenvalue = 0.0;
    double leakage = 0.0;            // top-two-level population
};

struct Trajectory {
    std::vector<double> times;
    std::vector<DensityMatrix> states;
    std::vector<StepDiagnostics> diagnostics;
    bool valid = true;                    // density invariants held at every recorded state
    std::optional<double> first_invalid_time;
    std::string invalid_reason;
    bool leakage_flag = false;            // truncation guard tripped (run continues)
    std::optional<double> first_leakage_time;
    long steps = 0;
};

struct EvolveOptions {
    double dt = 0.0;                       // 0: default_time_step
    std::optional<double> tolerance;       // set: adaptive Dormand-Prince 5(4)
    int record_every = 1;                  // fixed step: record every k-th step
    double leakage_threshold = 1e-8;
    bool check_positivity = true;          // eigen-decompose every recorded state
    long max_steps = 50'000'000;
    double min_dt = 1e-14;
};

/// 1e-3 * 2 pi / omega_eff, omega_eff = max(1, largest transition frequency, largest
/// two-boson decay rate).
double default_time_step(const Liouvillian& L);

/// Integrates d rho / dt = L[rho] from 0 to t_final. The final time is always recorded.
/// A density invariant failure truncates the run and marks it invalid.
Trajectory evolve(const Liouvillian& L, const DensityMatrix& rho0, double t_final, const EvolveOptions& opt = {});

struct PersistentMode {
    cplx eigenvalue;
    int row = 0, col = 0;  // dominant matrix unit |row><col|
};

struct SteadyState {
    std::vector<CMatrix> stationary;          // Hermitian, trace 1 where trace != 0
    std::vector<PersistentMode> persistent;   // undamped rotating modes
    Eigen::VectorXd singular_values;          // descending
    int kernel_dimension = 0;
};

/// Kernel of the dense generator via SVD; rank tolerance relative to the largest
/// singular value. Throws ConvergenceFailure when a singular value falls inside
/// [rank_tol/100, 100 rank_tol] (ill-conditioned kernel).
SteadyState steady_state(const Liouvillian& L, double rank_tol = 1e-10);

/// Integrates until max population change per unit time < rate_tol, checked over
/// windows of length `window`. Throws ConvergenceFailure when the horizon is reached first.
Eigen::VectorXd long_time_populations(const Liouvillian& L, const DensityMatrix& rho0, double horizon,
                                      const EvolveOptions& opt = {}, double rate_tol = 1e-12,
                                      double window = 1.0);

} // namespace gravvac
