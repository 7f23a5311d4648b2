#include "gravvac/perturb.hpp"

#include "gravvac/error.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace gravvac {

double single_mode_shift(int n_a, int n_b, double omega, double Omega, double gamma, double resonance_tol) {
    if (n_a < 0 || n_b < 0) throw DomainError("single_mode_shift: occupations must be >= 0");
    if (std::abs(Omega - 2.0 * omega) < resonance_tol) throw DomainError("single_mode_shift: resonant denominator");
    const double na = n_a, nb = n_b;
    const double w = gamma * gamma * Omega * Omega;
    const double up = 4 * na * nb + 2 * na + nb * nb + 3 * nb + 2;
    const double dn = 4 * na * nb + 2 * na - nb * nb + nb;
    return -w * up / (2 * omega + Omega) + w * dn / (-2 * omega + Omega);
}

double single_mode_shift_terms(int n_a, int n_b, double omega, double Omega, double gamma) {
    const double na = n_a, nb = n_b;
    const double w = gamma * gamma * Omega * Omega;
    return w * na * nb * (nb - 1) / (2 * omega + Omega) + w * na * (nb + 1) * (nb + 2) / (-2 * omega + Omega) +
           w * (na + 1) * nb * (nb - 1) / (2 * omega - Omega) +
           w * (na + 1) * (nb + 1) * (nb + 2) / (-2 * omega - Omega);
}

double multimode_shift(int n_b, double dp, double dm) {
    const double n = n_b;
    return (dm - dp) * n * n - (3 * dp + dm) * n;
}

RwaLadderTerms rwa_ladder_terms(int n, double dm) { return {-dm, dm * (2.0 * n + 1.0)}; }

double brute_force_second_order(int n_a, int n_b, double omega, double Omega, const BruteForceOptions& opt) {
    const int na = opt.field_levels, nb = opt.osc_levels;
    if (n_a >= na || n_b >= nb) throw DomainError("brute_force_second_order: level outside truncation");
    if (opt.gammas.size() < 2) throw DomainError("brute_force_second_order: need >= 2 couplings");
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(na, na), b = Eigen::MatrixXd::Zero(nb, nb);
    for (int k = 0; k + 1 < na; ++k) a(k, k + 1) = std::sqrt(k + 1.0);
    for (int k = 0; k + 1 < nb; ++k) b(k, k + 1) = std::sqrt(k + 1.0);
    const Eigen::MatrixXd A = a - a.transpose();
    const Eigen::MatrixXd B = b * b - b.transpose() * b.transpose();
    const int dim = na * nb;
    // Product basis index i_a * nb + i_b.
    Eigen::MatrixXd H0 = Eigen::MatrixXd::Zero(dim, dim), V = Eigen::MatrixXd::Zero(dim, dim);
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < nb; ++j) H0(i * nb + j, i * nb + j) = Omega * i + omega * j;
    for (int i = 0; i < na; ++i)
        for (int k = 0; k < na; ++k) {
            if (A(i, k) == 0.0) continue;
            V.block(i * nb, k * nb, nb, nb) = Omega * A(i, k) * B;
        }
    const int target = n_a * nb + n_b;
    const double e0 = H0(target, target);
    std::vector<double> f;
    for (double g : opt.gammas) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H0 + g * V);
        Eigen::Index k;
        es.eigenvectors().row(target).cwiseAbs().maxCoeff(&k);
        f.push_back((es.eigenvalues()(k) - e0) / (g * g));
    }
    // f(g) = E2 + E4 g^2 + ...: Neville extrapolation to g^2 = 0.
    for (std::size_t level = 1; level < f.size(); ++level) {
        std::vector<double> next;
        for (std::size_t i = 0; i + 1 < f.size(); ++i) {
            const double q = std::pow(opt.gammas[i] / opt.gammas[i + level], 2.0);
            next.push_back((q * f[i + 1] - f[i]) / (q - 1.0));
        }
        f = next;
    }
    return f.front();
}

} // namespace gravvac
