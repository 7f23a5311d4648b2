#pragma once

#include <complex>
#include <map>
#include <utility>
#include <vector>

namespace gravvac {

enum class FreeVariant { x, xi };

/// Ordered moments <p^a q^b> (p powers left of q powers), hbar = mu = 1.
class MomentTable {
public:
    MomentTable() = default;
    MomentTable(FreeVariant v, int max_b, int a_max);

    FreeVariant variant() const { return variant_; }
    int max_b() const { return max_b_; }
    int a_max() const { return a_max_; }
    /// Tracked pairs satisfy b <= max_b and a + 3 b <= a_max + 3 max_b.
    bool tracks(int a, int b) const;

    std::complex<double> get(int a, int b) const;  // throws DomainError if absent
    void set(int a, int b, std::complex<double> v);
    bool has(int a, int b) const { return entries_.count({a, b}) != 0; }
    const std::map<std::pair<int, int>, std::complex<double>>& entries() const { return entries_; }

    /// <q p + p q> = 2 <p q> + i.
    std::complex<double> qp_symmetric() const;
    /// <p^3 q + q p^3> = 2 <p^3 q> + 3 i <p^2>.
    std::complex<double> p3q_symmetric() const;

private:
    FreeVariant variant_ = FreeVariant::x;
    int max_b_ = 0;
    int a_max_ = 0;
    std::map<std::pair<int, int>, std::complex<double>> entries_;
};

struct GaussianSeed {
    double q_mean = 0.0;
    double p_mean = 0.0;
    double var_q = 0.5;
    double var_p = 0.5;
    double cov_qp = 0.0;  // (1/2) <{dq, dp}>
};

/// Fills every tracked entry from the Gaussian characteristic function
/// <e^{a p} e^{b q}> = exp(a p0 + b q0 + a^2 Vp/2 + a b (C - i/2) + b^2 Vq/2).
MomentTable gaussian_seed(FreeVariant v, const GaussianSeed& s, int max_b = 2, int a_max = 6);

struct ClosedForm {
    double mean = 0.0;
    double second = 0.0;
    std::vector<std::complex<double>> momentum;  // <p^n>, n = 1..6
};

/// <x>(t) = <x> + (<p> + Dx <p^3>) t;
/// <x^2>(t) = (<p^2> + 2 Dx <p^4> + Dx^2 <p^6>) t^2 + (<xp+px> + Dx <p^3x+xp^3>) t + <x^2>.
ClosedForm closed_form_x(const MomentTable& init, double delta_x, double t);

/// <xi>(t) = <xi> + <p> t / mu_xi;
/// <xi^2>(t) = <p^2> (1 - Dxi) t^2 / mu_xi^2 + <xi p + p xi> (1 + Dxi) t / mu_xi + <xi^2>.
ClosedForm closed_form_xi(const MomentTable& init, double delta_xi, double mu_xi, double t);

/// Right-hand side of the moment hierarchy.
/// x:  H = p^2/2 + (Dx/4) p^4, unitary.
/// xi: factor (1 + Dxi (b - a)) on both the p^{a+1} q^{b-1} and p^a q^{b-2} couplings,
///     from -(1 - Dxi) i [p^2/2, .] + (Dxi/2)(p^2 . p q + q p . p^2 - . p^3 q - q p^3 .).
std::map<std::pair<int, int>, std::complex<double>> moment_derivative(const MomentTable& m, double delta);

/// Fixed-step RK4 over the closed moment system.
MomentTable moment_ode_oracle(FreeVariant v, const MomentTable& init, double delta, double t, double dt);

} // namespace gravvac
