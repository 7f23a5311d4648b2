#pragma once

namespace gravvac {

/// CODATA 2018 values, SI units.
namespace codata {
inline constexpr double G = 6.67430e-11;        // m^3 kg^-1 s^-2
inline constexpr double hbar = 1.054571817e-34; // J s
inline constexpr double c = 299792458.0;        // m/s
} // namespace codata

struct PhysicalParams {
    double mu = 1.0e-3;                               // reduced mass, kg
    double omega = 2.0 * 3.14159265358979323846 * 100.0;      // trap frequency, rad/s
    double omega_max = 2.0 * 3.14159265358979323846 * 1.0e4;  // UV cutoff, rad/s
    double G = codata::G;
    double hbar = codata::hbar;
    double c = codata::c;

    /// Planck time sqrt(G hbar / c^5).
    double t_p() const;

    /// Throws DomainError. With harmonic set, also requires omega_max > 2 omega.
    void validate(bool harmonic) const;

    bool operator==(const PhysicalParams&) const = default;
};

/// Trap-frequency units: times in 1/omega, rates in omega.
struct DimensionlessParams {
    double lambda_cut = 100.0;  // omega_max / omega
    double gamma_bar = 0.0;     // Gamma / omega, scale already applied
    double coupling_scale = 1.0;

    void validate(bool harmonic) const;
};

/// Vacuum decay rate (32/15) G hbar omega^3 / c^5 in s^-1.
double decay_rate_si(const PhysicalParams& p);

DimensionlessParams to_dimensionless(const PhysicalParams& p, double coupling_scale = 1.0);

} // namespace gravvac
