#include "gravvac/coeffs.hpp"

#include "gravvac/error.hpp"
#include "gravvac/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace gravvac {

namespace {
constexpr double pi = std::numbers::pi;

void check_cut(const DimensionlessParams& d) {
    d.validate(true);
}
} // namespace

double gamma_rate(const DimensionlessParams& d) {
    if (!(d.gamma_bar >= 0.0)) throw DomainError("gamma_bar must be >= 0");
    return d.gamma_bar;
}

ShiftSet shifts_x(const DimensionlessParams& d) {
    check_cut(d);
    const double g = d.gamma_bar / (2.0 * pi);
    const double l = d.lambda_cut;
    const double lp = std::log(std::abs(l + 2.0));
    const double lm = std::log(std::abs(l - 2.0));
    ShiftSet s;
    s.plus = g * (-lp + l / 2.0);
    s.minus = g * (-lm - l / 2.0);
    s.plus_r = -g * lp;
    s.minus_r = -g * lm;
    return s;
}

ShiftSet shifts_xi(const DimensionlessParams& d) {
    check_cut(d);
    const double g = d.gamma_bar / (2.0 * pi);
    const double l = d.lambda_cut;
    const double lp = std::log(std::abs(l + 2.0));
    const double lm = std::log(std::abs(l - 2.0));
    const double l1 = l / 2.0, l2 = l * l / 8.0, l3 = l * l * l / 24.0;
    ShiftSet s;
    s.plus = g * (-lp + l1 - l2 + l3);
    s.minus = g * (-lm - l1 - l2 - l3);
    s.plus_r = g * (-lp + l1 + l3);
    s.minus_r = g * (-lm - l1 - l3);
    return s;
}

FreeParticleConstants free_particle_constants(const PhysicalParams& p) {
    if (!(p.mu > 0.0)) throw DomainError("mu must be > 0");
    if (!(p.omega_max >= 0.0)) throw DomainError("omega_max must be >= 0");
    const double tp2 = p.G * p.hbar / std::pow(p.c, 5);
    FreeParticleConstants f;
    f.delta_x = 32.0 / (15.0 * pi) * tp2 * p.omega_max / p.hbar;
    f.delta_xi = 8.0 / (15.0 * pi) * tp2 * p.omega_max * p.omega_max;
    f.gamma_xi = f.delta_xi / (2.0 * p.hbar * p.hbar * p.mu);
    f.mu_xi = renormalized_mass(p.mu, f.delta_xi);
    return f;
}

double renormalized_mass(double mu, double delta_xi) {
    if (!(delta_xi < 1.0)) throw DomainError("Delta_xi >= 1: renormalized mass pole");
    return mu / (1.0 - delta_xi);
}

VacuumCoefficients vacuum_coefficients(const DimensionlessParams& d) {
    VacuumCoefficients c;
    c.gamma = gamma_rate(d);
    const ShiftSet x = shifts_x(d);
    const ShiftSet xi = shifts_xi(d);
    c.delta_plus = x.plus;
    c.delta_minus = x.minus;
    c.delta_plus_r = x.plus_r;
    c.delta_minus_r = x.minus_r;
    c.big_delta_plus = xi.plus;
    c.big_delta_minus = xi.minus;
    c.big_delta_plus_r = xi.plus_r;
    c.big_delta_minus_r = xi.minus_r;
    return c;
}

VacuumCoefficients vacuum_coefficients(const DimensionlessParams& d, const PhysicalParams& p) {
    VacuumCoefficients c = vacuum_coefficients(d);
    const FreeParticleConstants f = free_particle_constants(p);
    c.free_delta_x = f.delta_x;
    c.free_delta_xi = f.delta_xi;
    c.free_gamma_xi = f.gamma_xi;
    c.mu_xi = f.mu_xi;
    return c;
}

double mode_integral(ShiftKind kind, const DimensionlessParams& d, int n_points) {
    check_cut(d);
    if (n_points < 64) throw DomainError("quadrature_oracle: n_points must be >= 64");
    const double gamma = d.gamma_bar;
    const double lambda = d.lambda_cut;
    const bool xi = kind == ShiftKind::shift_xi_plus || kind == ShiftKind::shift_xi_minus;
    const bool plus = kind == ShiftKind::shift_x_plus || kind == ShiftKind::shift_xi_plus;
    const int power = xi ? 3 : 1;
    auto J = [gamma, power](double u) { return gamma / (2.0 * pi) * std::pow(u / 2.0, power); };
    if (plus) {
        const int panels = std::max(1, n_points / 16);
        return gauss_legendre([&](double u) { return J(u) / (2.0 + u); }, 0.0, lambda, panels);
    }
    return principal_value(J, 2.0, 0.0, lambda, n_points);
}

double quadrature_oracle(ShiftKind kind, const DimensionlessParams& d, int n_points, double rel_tol) {
    const double offset = d.gamma_bar / (2.0 * pi) * std::log(2.0);
    const double v = mode_integral(kind, d, n_points) - offset;
    const double v2 = mode_integral(kind, d, 2 * n_points) - offset;
    const double scale = std::max(std::abs(v2), d.gamma_bar * 1e-300);
    if (std::abs(v - v2) > rel_tol * scale) throw ConvergenceFailure("quadrature_oracle: not converged at n_points");
    return v;
}

} // namespace gravvac
