#pragma once

#include "gravvac/params.hpp"

namespace gravvac {

/// Every coefficient of the master equations. Harmonic entries are in units of omega.
struct VacuumCoefficients {
    double gamma = 0.0;
    double delta_plus = 0.0, delta_minus = 0.0;
    double delta_plus_r = 0.0, delta_minus_r = 0.0;
    double big_delta_plus = 0.0, big_delta_minus = 0.0;
    double big_delta_plus_r = 0.0, big_delta_minus_r = 0.0;
    double free_delta_x = 0.0;   // Delta_x
    double free_delta_xi = 0.0;  // Delta_xi
    double free_gamma_xi = 0.0;  // gamma_xi
    double mu_xi = 1.0;          // renormalized mass, in units of mu unless built from SI input
};

struct ShiftSet {
    double plus = 0.0, minus = 0.0;
    double plus_r = 0.0, minus_r = 0.0;
};

struct FreeParticleConstants {
    double delta_x = 0.0;
    double delta_xi = 0.0;
    double gamma_xi = 0.0;
    double mu_xi = 0.0;
};

/// Gamma in units of omega (gamma_bar already carries coupling_scale).
double gamma_rate(const DimensionlessParams& d);

/// delta_{+-} and delta_{+-}^R, logs normalized by omega.
ShiftSet shifts_x(const DimensionlessParams& d);

/// Delta_{+-} and Delta_{+-}^R, logs normalized by omega.
ShiftSet shifts_xi(const DimensionlessParams& d);

/// Delta_x, Delta_xi, gamma_xi, mu_xi in SI units.
FreeParticleConstants free_particle_constants(const PhysicalParams& p);

/// mu / (1 - Delta_xi); throws for Delta_xi >= 1.
double renormalized_mass(double mu, double delta_xi);

/// Harmonic coefficients from dimensionless input; free-particle entries left at
/// their zero-coupling values (mu_xi = 1 in units of mu).
VacuumCoefficients vacuum_coefficients(const DimensionlessParams& d);

/// As above plus the SI free-particle constants of p.
VacuumCoefficients vacuum_coefficients(const DimensionlessParams& d, const PhysicalParams& p);

enum class ShiftKind { shift_x_plus, shift_x_minus, shift_xi_plus, shift_xi_minus };

/// Independent evaluation of a shift coefficient from its mode integral.
///
/// The angular integral (16 pi / 15) is common to Gamma and the shifts, so the
/// radial spectral density is fixed by Gamma = 2 pi J(2 omega):
/// J(u) = (Gamma / 2 pi) (u/2)^k with k = 1 (x) or 3 (xi). The radial integral
/// is done numerically, principal value for the minus kinds. The integral has its
/// logs referenced to 2 omega; the result is reported in the omega-referenced
/// convention of shifts_x / shifts_xi by subtracting (Gamma / 2 pi) ln 2.
/// Throws ConvergenceFailure when doubling n_points moves the result by more than rel_tol.
double quadrature_oracle(ShiftKind kind, const DimensionlessParams& d, int n_points,
                         double rel_tol = 1e-9);

/// Raw mode integral without the log-reference adjustment.
double mode_integral(ShiftKind kind, const DimensionlessParams& d, int n_points);

} // namespace gravvac
