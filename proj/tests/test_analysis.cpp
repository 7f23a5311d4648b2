#include "gravvac/analysis.hpp"
#include "gravvac/error.hpp"
#include "gravvac/perturb.hpp"

#include <doctest.h>

#include <cmath>
#include <initializer_list>

using namespace gravvac;

namespace {
VacuumCoefficients coeffs(double lambda, double gamma_bar) {
    DimensionlessParams d;
    d.lambda_cut = lambda;
    d.gamma_bar = gamma_bar;
    return vacuum_coefficients(d);
}
} // namespace

TEST_CASE("uncoupled ladder is harmonic") {
    const SpectralLadder sl = extract_ladder(liouvillian_x_rwa(VacuumCoefficients{}, 8));
    REQUIRE(sl.levels.size() == 7);
    for (std::size_t k = 0; k < 7; ++k) {
        CHECK(sl.transition_freqs[k] == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(std::abs(sl.decay_rates[k]) < 1e-14);
        CHECK_FALSE(sl.ambiguous[k]);
    }
}

TEST_CASE("x_rwa ladder with delta_minus = 0.01") {
    VacuumCoefficients c;
    c.delta_minus_r = 0.01;
    const SpectralLadder sl = extract_ladder(liouvillian_x_rwa(c, 8));
    CHECK(sl.transition_freqs[1] == doctest::Approx(1.02).epsilon(1e-13));
    for (std::size_t n = 0; n < sl.levels.size(); ++n) {
        const RwaLadderTerms t = rwa_ladder_terms(int(n), 0.01);
        CHECK(sl.transition_freqs[n] == doctest::Approx(1.0 + t.level_independent + t.level_dependent).epsilon(1e-13));
    }
}

TEST_CASE("three ladder routes agree for rwa variants") {
    const VacuumCoefficients c = coeffs(100.0, 1e-3);
    for (Variant v : {Variant::x_rwa, Variant::xi_rwa}) {
        const Liouvillian L = make_liouvillian(v, c, 12);
        const Eigen::VectorXd e = effective_hamiltonian(L);
        const SpectralLadder sl = extract_ladder(L);
        const double m = active_shifts(v, c, true).second;
        for (std::size_t k = 0; k < sl.levels.size(); ++k) {
            const int n = sl.levels[k];
            const double pt = 1.0 + multimode_shift(n + 1, 0.0, m) - multimode_shift(n, 0.0, m);
            CHECK(std::abs(sl.transition_freqs[k] - (e(n + 1) - e(n))) < 1e-8);
            CHECK(std::abs(pt - (e(n + 1) - e(n))) < 1e-8);
            CHECK(sl.overlaps[k] > 0.9);
        }
    }
}

TEST_CASE("full variant ladder follows the multimode differences") {
    const VacuumCoefficients c = coeffs(10.0, 1e-6);
    const Liouvillian L = liouvillian_x_full(c, 10);
    const SpectralLadder sl = extract_ladder(L);
    CHECK(sl.threshold == 0.7);
    const auto [p, m] = active_shifts(Variant::x_full, c, true);
    for (std::size_t k = 0; k < sl.levels.size(); ++k) {
        const int n = sl.levels[k];
        CHECK(std::abs(sl.transition_freqs[k] - (1.0 + multimode_shift(n + 1, p, m) - multimode_shift(n, p, m))) <
              1e-8);
        CHECK_FALSE(sl.ambiguous[k]);
    }
}

TEST_CASE("x cutoff sweep is logarithmic") {
    const CutoffFit f = cutoff_sweep(FreeVariant::x, log_grid(10.0, 1e4, 24), 1.0);
    CHECK(f.status == "ok");
    CHECK(f.model == "log");
    CHECK(f.residual < 1e-10);
    CHECK(f.fit_params[0] == doctest::Approx(-1.0 / (2.0 * M_PI)).epsilon(1e-10));
    CHECK(std::abs(f.exponent) < 0.2);
}

TEST_CASE("xi cutoff sweep is cubic") {
    const CutoffFit f = cutoff_sweep(FreeVariant::xi, log_grid(10.0, 1e4, 24), 1.0);
    CHECK(f.status == "ok");
    CHECK(f.model == "cubic");
    CHECK(f.exponent == doctest::Approx(3.0).epsilon(0.01 / 3.0));
    CHECK(f.fit_params[0] == doctest::Approx(-1.0 / (48.0 * M_PI)).epsilon(1e-8));
    CHECK(f.residual < 1e-10);
}

TEST_CASE("cutoff sweep input checks") {
    CHECK(cutoff_sweep(FreeVariant::xi, log_grid(10.0, 1e3, 8), 0.0).status == "degenerate data");
    CHECK_THROWS_AS(cutoff_sweep(FreeVariant::x, log_grid(10.0, 1e3, 7)), DomainError);
    CHECK_THROWS_AS(cutoff_sweep(FreeVariant::x, log_grid(2.0, 1e3, 8)), DomainError);
}

TEST_CASE("contrast grows with the cutoff") {
    auto ratio = [](double l) {
        return std::abs(coeffs(l, 1.0).big_delta_minus_r) / std::abs(coeffs(l, 1.0).delta_minus_r);
    };
    CHECK(ratio(100.0) > ratio(10.0));
    CHECK(ratio(10.0) > 1.0);
}

TEST_CASE("channel discriminator") {
    const double rate = 0.05;
    EvolveOptions opt;
    opt.dt = 1e-3;
    opt.record_every = 200;
    const DiscriminatorReport r = channel_discriminator(superposition({{0, 1.0}, {2, 1.0}}, 5), rate, 4.0, opt);
    CHECK(r.phase.max_population_change < 1e-12);
    CHECK(r.amplitude.population_rate == doctest::Approx(2.0 * rate).epsilon(1e-8));
    CHECK(r.amplitude.coherence_rate == doctest::Approx(rate).epsilon(1e-8));
    CHECK(r.phase.coherence_rate == doctest::Approx(2.0 * rate).epsilon(1e-8));
    CHECK(r.discriminated);
    CHECK_THROWS_AS(channel_discriminator(fock_state(2, 5), rate, 1.0), DomainError);
    CHECK_THROWS_AS(channel_discriminator(superposition({{0, 1.0}, {1, 1.0}}, 5), rate, 1.0), DomainError);
}

TEST_CASE("coherence orders generated from diagonal seeds") {
    const VacuumCoefficients c = coeffs(10.0, 0.05);
    const DensityMatrix rho = thermal_state(0.5, 10);
    for (Variant v : {Variant::x_full, Variant::xi_full}) {
        const Liouvillian L = make_liouvillian(v, c, 10);
        CHECK(populated_coherence_orders(L, rho) == std::set<int>{4});
        CHECK(populated_coherence_orders(L, rho, 2) == std::set<int>{4, 8});
    }
    CHECK(populated_coherence_orders(liouvillian_xi_rwa(c, 10), rho).empty());
}
