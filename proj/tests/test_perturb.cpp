#include "gravvac/error.hpp"
#include "gravvac/generators.hpp"
#include "gravvac/perturb.hpp"

#include <doctest.h>

#include <initializer_list>

using namespace gravvac;

TEST_CASE("single-mode shift against an explicit intermediate-state sum") {
    // Sum over |m_a, m_b> of |<m|V|n>|^2 / (E_n - E_m), evaluated independently.
    CHECK(single_mode_shift(0, 0, 1.0, 2.7183, 1.0) == doctest::Approx(-3.1321259309497074).epsilon(1e-13));
    CHECK(single_mode_shift(1, 2, 1.0, 2.7183, 1.0) == doctest::Approx(47.84264583292087).epsilon(1e-13));
    CHECK(single_mode_shift(2, 3, 1.0, 2.7183, 1.0) == doctest::Approx(151.14306310896848).epsilon(1e-13));
}

TEST_CASE("four-term and consolidated forms agree") {
    for (int na = 0; na < 4; ++na)
        for (int nb = 0; nb < 5; ++nb)
            CHECK(single_mode_shift_terms(na, nb, 1.0, 3.3, 0.01) ==
                  doctest::Approx(single_mode_shift(na, nb, 1.0, 3.3, 0.01)).epsilon(1e-13));
}

TEST_CASE("shift scales with gamma squared") {
    CHECK(single_mode_shift(1, 1, 1.0, 2.5, 0.2) / single_mode_shift(1, 1, 1.0, 2.5, 0.1) == doctest::Approx(4.0));
}

TEST_CASE("resonance is rejected") {
    CHECK_THROWS_AS(single_mode_shift(0, 0, 1.0, 2.0, 0.1), DomainError);
}

TEST_CASE("brute-force diagonalization") {
    for (auto [na, nb] : {std::pair{0, 0}, {1, 2}})
        CHECK(brute_force_second_order(na, nb, 1.0, 2.7183) ==
              doctest::Approx(single_mode_shift(na, nb, 1.0, 2.7183, 1.0)).epsilon(1e-4));
}

TEST_CASE("multimode shift") {
    CHECK(multimode_shift(0, 0.3, -0.2) == 0.0);
    // (Dm - Dp) n^2 - (3 Dp + Dm) n
    CHECK(multimode_shift(3, 0.3, -0.2) == doctest::Approx(-0.5 * 9.0 - 0.7 * 3.0));
}

TEST_CASE("multimode shift matches the generator ladder") {
    DimensionlessParams d;
    d.lambda_cut = 25.0;
    d.gamma_bar = 0.01;
    const VacuumCoefficients c = vacuum_coefficients(d);
    for (bool renorm : {true, false}) {
        const Liouvillian L = liouvillian_x_full(c, 10, renorm);
        const Eigen::VectorXd e = effective_hamiltonian(L);
        const auto [p, m] = active_shifts(Variant::x_full, c, renorm);
        for (int n = 0; n < 10; ++n) CHECK(std::abs(e(n) - n - multimode_shift(n, p, m)) < 1e-13);
    }
}

TEST_CASE("rwa ladder decomposition") {
    const RwaLadderTerms t = rwa_ladder_terms(3, 0.01);
    CHECK(t.level_independent == doctest::Approx(-0.01));
    CHECK(t.level_dependent == doctest::Approx(0.07));
    CHECK(t.level_independent + t.level_dependent == doctest::Approx(2 * 3 * 0.01));
}
