#pragma once

#include <Eigen/Dense>
#include <complex>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace gravvac {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// N x N operator on the truncated Fock space (levels 0..N-1).
using FockOperator = CMatrix;
/// N x N Hermitian, unit-trace, positive matrix. Invariants are checked by
/// check_density / validate_density, never silently enforced.
using DensityMatrix = CMatrix;

struct Ladder {
    FockOperator lower;  // b
    FockOperator raise;  // b^dagger
};

Ladder ladder(int dim);
FockOperator number_operator(int dim);
FockOperator identity(int dim);

/// Gibbs state with weights e^{-n beta_bar}, renormalized over the truncated space.
/// beta_bar = +inf gives |0><0|.
DensityMatrix thermal_state(double beta_bar, int dim);

/// Untruncated Gibbs weight (1 - q) q^m, q = e^{-beta_bar}.
double gibbs_weight(double beta_bar, int m);

DensityMatrix fock_state(int n, int dim);

/// Pure state from (level, amplitude) pairs, normalized.
DensityMatrix superposition(const std::vector<std::pair<int, cplx>>& amps, int dim);

cplx expectation(const FockOperator& op, const DensityMatrix& rho);

struct DensityCheck {
    double hermiticity = 0.0;   // max |rho - rho^dagger|
    double trace_error = 0.0;   // |tr rho - 1|
    double min_eigenvalue = 0.0;
    bool ok = true;
};

DensityCheck check_density(const DensityMatrix& rho, double herm_tol = 1e-12, double trace_tol = 1e-10,
                           double eig_tol = 1e-10);

/// Throws InvariantViolation naming the failed invariant.
void validate_density(const DensityMatrix& rho);

/// Smallest eigenvalue of the Hermitian part.
double min_eigenvalue(const CMatrix& rho);

/// Combined population of the top `levels` levels.
double top_leakage(const DensityMatrix& rho, int levels = 2);

/// CSV: line "dim=N", then N rows of interleaved re,im values.
void write_density_csv(std::ostream& os, const DensityMatrix& rho);
DensityMatrix read_density_csv(std::istream& is);

} // namespace gravvac
