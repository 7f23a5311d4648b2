#include "gravvac/coeffs.hpp"
#include "gravvac/error.hpp"

#include <doctest.h>

#include <cmath>
#include <initializer_list>

using namespace gravvac;

namespace {
DimensionlessParams dp(double lambda, double gamma_bar) {
    DimensionlessParams d;
    d.lambda_cut = lambda;
    d.gamma_bar = gamma_bar;
    return d;
}
} // namespace

TEST_CASE("x shifts at lambda 100") {
    const ShiftSet s = shifts_x(dp(100.0, 1.0));
    CHECK(s.minus_r == doctest::Approx(-0.72972023814600584).epsilon(1e-14));
    CHECK(s.plus == doctest::Approx(7.2216598696949452).epsilon(1e-14));
    CHECK(s.minus == doctest::Approx(-8.6874673927407731).epsilon(1e-14));
}

TEST_CASE("xi shifts") {
    const ShiftSet s = shifts_xi(dp(100.0, 1.0));
    CHECK(s.minus_r == doctest::Approx(-6640.1434295550471).epsilon(1e-14));
    CHECK(s.minus == doctest::Approx(-6839.0871084199161).epsilon(1e-14));
    CHECK(s.plus == doctest::Approx(6439.7339431671317).epsilon(1e-14));
    CHECK(shifts_xi(dp(10.0, 1.0)).plus == doctest::Approx(5.0423087125374092).epsilon(1e-14));
}

TEST_CASE("zero coupling gives zero shifts") {
    const VacuumCoefficients c = vacuum_coefficients(dp(50.0, 0.0));
    for (double v : {c.gamma, c.delta_plus, c.delta_minus, c.delta_plus_r, c.delta_minus_r, c.big_delta_plus,
                     c.big_delta_minus, c.big_delta_plus_r, c.big_delta_minus_r})
        CHECK(v == 0.0);
    CHECK(c.mu_xi == 1.0);
}

TEST_CASE("renormalization subtracts the free-particle terms") {
    const double l = 37.5, g = 0.2 / (2.0 * M_PI);
    const ShiftSet x = shifts_x(dp(l, 0.2)), xi = shifts_xi(dp(l, 0.2));
    CHECK(x.plus_r - x.plus == doctest::Approx(-g * l / 2.0).epsilon(1e-14));
    CHECK(x.minus_r - x.minus == doctest::Approx(g * l / 2.0).epsilon(1e-14));
    CHECK(xi.plus_r - xi.plus == doctest::Approx(g * l * l / 8.0).epsilon(1e-14));
    CHECK(xi.minus_r - xi.minus == doctest::Approx(g * l * l / 8.0).epsilon(1e-14));
}

TEST_CASE("cutoff at the log singularity is rejected") {
    CHECK_THROWS_AS(shifts_x(dp(2.0, 1.0)), DomainError);
    CHECK_THROWS_AS(shifts_xi(dp(1.5, 1.0)), DomainError);
}

TEST_CASE("free-particle constants") {
    PhysicalParams p;
    const FreeParticleConstants f = free_particle_constants(p);
    // 40-digit evaluations at omega_max = 2 pi 10^4
    CHECK(f.delta_x == doctest::Approx(1.1759555982351728e-48).epsilon(1e-12));
    CHECK(f.delta_xi == doctest::Approx(1.9479910706042963e-78).epsilon(1e-12));
    CHECK(f.gamma_xi == doctest::Approx(f.delta_xi / (2.0 * p.hbar * p.hbar * p.mu)).epsilon(1e-14));
    CHECK(f.mu_xi == doctest::Approx(p.mu).epsilon(1e-15));

    PhysicalParams q = p;
    q.omega_max *= 2.0;
    const FreeParticleConstants f2 = free_particle_constants(q);
    CHECK(f2.delta_x / f.delta_x == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(f2.delta_xi / f.delta_xi == doctest::Approx(4.0).epsilon(1e-14));

    q.omega_max = 0.0;
    const FreeParticleConstants f0 = free_particle_constants(q);
    CHECK(f0.delta_x == 0.0);
    CHECK(f0.delta_xi == 0.0);
    CHECK(f0.gamma_xi == 0.0);
    CHECK(f0.mu_xi == p.mu);
}

TEST_CASE("renormalized mass") {
    CHECK(renormalized_mass(3.0, 0.5) == doctest::Approx(6.0));
    CHECK(renormalized_mass(3.0, 0.0) == 3.0);
    CHECK_THROWS_AS(renormalized_mass(1.0, 1.0), DomainError);
}

TEST_CASE("quadrature oracle agrees with the closed forms") {
    CHECK(quadrature_oracle(ShiftKind::shift_x_minus, dp(100.0, 1.0), 4096) ==
          doctest::Approx(shifts_x(dp(100.0, 1.0)).minus).epsilon(1e-6));
    CHECK(quadrature_oracle(ShiftKind::shift_xi_plus, dp(10.0, 1.0), 4096) ==
          doctest::Approx(shifts_xi(dp(10.0, 1.0)).plus).epsilon(1e-6));
    CHECK(quadrature_oracle(ShiftKind::shift_x_plus, dp(999.0, 0.3), 4096) ==
          doctest::Approx(shifts_x(dp(999.0, 0.3)).plus).epsilon(1e-6));
    CHECK(quadrature_oracle(ShiftKind::shift_xi_minus, dp(2.5, 0.3), 4096) ==
          doctest::Approx(shifts_xi(dp(2.5, 0.3)).minus).epsilon(1e-6));
}

TEST_CASE("raw mode integral differs by the log reference") {
    const DimensionlessParams d = dp(30.0, 1.0);
    CHECK(mode_integral(ShiftKind::shift_x_minus, d, 4096) - shifts_x(d).minus ==
          doctest::Approx(std::log(2.0) / (2.0 * M_PI)).epsilon(1e-9));
}

TEST_CASE("quadrature oracle edge cases") {
    CHECK(quadrature_oracle(ShiftKind::shift_xi_minus, dp(20.0, 0.0), 256) == 0.0);
    CHECK_THROWS_AS(quadrature_oracle(ShiftKind::shift_x_plus, dp(20.0, 1.0), 32), DomainError);
    CHECK_THROWS_AS(quadrature_oracle(ShiftKind::shift_x_plus, dp(999.0, 1.0), 64, 1e-9), ConvergenceFailure);
}
