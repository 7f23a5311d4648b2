#include "gravvac/params.hpp"

#include "gravvac/error.hpp"

#include <cmath>

namespace gravvac {

double PhysicalParams::t_p() const { return std::sqrt(G * hbar / std::pow(c, 5)); }

void PhysicalParams::validate(bool harmonic) const {
    if (!(mu > 0.0)) throw DomainError("mu must be > 0");
    if (!(omega >= 0.0)) throw DomainError("omega must be >= 0");
    if (!(omega_max > 0.0)) throw DomainError("omega_max must be > 0");
    if (!(G > 0.0) || !(hbar > 0.0) || !(c > 0.0)) throw DomainError("G, hbar and c must be > 0");
    if (harmonic && !(omega_max > 2.0 * omega)) throw DomainError("omega_max must exceed 2*omega");
}

void DimensionlessParams::validate(bool harmonic) const {
    if (!(gamma_bar >= 0.0)) throw DomainError("gamma_bar must be >= 0");
    if (!(coupling_scale >= 0.0)) throw DomainError("coupling_scale must be >= 0");
    if (harmonic) {
        if (!(lambda_cut > 2.0)) throw DomainError("lambda_cut must be > 2");
        if (std::abs(lambda_cut - 2.0) < 1e-9) throw DomainError("lambda_cut too close to 2");
    }
}

double decay_rate_si(const PhysicalParams& p) {
    return (32.0 / 15.0) * p.G * p.hbar * p.omega * p.omega * p.omega / std::pow(p.c, 5);
}

DimensionlessParams to_dimensionless(const PhysicalParams& p, double coupling_scale) {
    p.validate(false);
    if (p.omega == 0.0) throw DomainError("omega == 0: use the free-particle sector");
    if (!(coupling_scale >= 0.0)) throw DomainError("coupling_scale must be >= 0");
    DimensionlessParams d;
    d.lambda_cut = p.omega_max / p.omega;
    if (!(d.lambda_cut > 2.0)) throw DomainError("lambda_cut must be > 2");
    d.coupling_scale = coupling_scale;
    d.gamma_bar = coupling_scale * decay_rate_si(p) / p.omega;
    return d;
}

} // namespace gravvac
