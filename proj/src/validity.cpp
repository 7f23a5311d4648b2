#include "gravvac/validity.hpp"

#include "gravvac/error.hpp"

#include <cmath>

namespace gravvac {

namespace {
template <class F>
void for_each_probe(int n, F&& f) {
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            CMatrix p = CMatrix::Zero(n, n);
            if (i == j) {
                p(i, i) = 1.0;
                f(p);
                continue;
            }
            p(i, j) = 1.0;
            p(j, i) = 1.0;
            f(p);
            p(i, j) = cplx(0.0, 1.0);
            p(j, i) = cplx(0.0, -1.0);
            f(p);
        }
}

double time_from(double gamma_t, const VacuumCoefficients& c) {
    if (!(gamma_t >= 0.0)) throw DomainError("gamma_t must be >= 0");
    if (gamma_t == 0.0) return 0.0;
    if (!(c.gamma > 0.0)) throw DomainError("gamma_t > 0 requires Gamma > 0");
    return gamma_t / c.gamma;
}
} // namespace

double check_trace_annihilation(const Liouvillian& L) {
    double worst = 0.0;
    for_each_probe(L.dim(), [&](const CMatrix& p) { worst = std::max(worst, std::abs(L.apply(p).trace())); });
    return worst;
}

double check_hermiticity_preservation(const Liouvillian& L) {
    double worst = 0.0;
    for_each_probe(L.dim(), [&](const CMatrix& p) {
        const CMatrix y = L.apply(p);
        worst = std::max(worst, (y - y.adjoint()).cwiseAbs().maxCoeff());
    });
    return worst;
}

CMatrix build_Sn(double beta_bar, double gamma_t, int n, const VacuumCoefficients& c, bool renormalized) {
    if (n < 0) throw DomainError("build_Sn: n must be >= 0");
    const double t = time_from(gamma_t, c);
    const auto [dp, dm] = active_shifts(Variant::xi_full, c, renormalized);
    const double g = c.gamma;
    auto s = [&](int m) { return gibbs_weight(beta_bar, m); };
    CMatrix S = CMatrix::Zero(n + 1, n + 1);
    const cplx I(0.0, 1.0);
    for (int m = 0; m <= n; ++m) {
        const double fm = m;
        S(m, m) = s(m) + g * t * ((fm + 1) * (fm + 2) * s(m + 2) - fm * (fm - 1) * s(m));
        if (m + 4 <= n) {
            const double r = std::sqrt((fm + 1) * (fm + 2) * (fm + 3) * (fm + 4));
            const cplx y = r * (I * dp * (s(m) - s(m + 2)) + (I * dm + g / 2.0) * (s(m + 4) - s(m + 2))) * t;
            S(m, m + 4) = y;
            S(m + 4, m) = std::conj(y);
        }
    }
    return S;
}

double sn_determinant_recursive(const CMatrix& S) {
    const int size = static_cast<int>(S.rows());
    double det = 1.0;
    for (int r = 0; r < 4 && r < size; ++r) {
        double prev2 = 1.0, prev = 1.0;
        bool first = true;
        for (int k = r; k < size; k += 4) {
            const double x = S(k, k).real();
            double cur;
            if (first) {
                cur = x;
                first = false;
            } else {
                cur = x * prev - std::norm(S(k - 4, k)) * prev2;
            }
            prev2 = prev;
            prev = cur;
        }
        det *= prev;
    }
    return det;
}

NmaxBound n_max_bound(double beta_bar) {
    if (!(beta_bar > 0.0)) throw DomainError("n_max_bound: beta_bar must be > 0");
    const double r = std::isinf(beta_bar) ? 0.0 : std::exp(-2.0 * beta_bar);
    NmaxBound b;
    b.value_a = (1.0 + 3.0 * r + std::sqrt(1.0 + r * r) + 14.0 * r) / (2.0 * (1.0 - r));
    b.value_b = (1.0 + 3.0 * r + std::sqrt(1.0 + r * r + 14.0 * r)) / (2.0 * (1.0 - r));
    b.reading_a = static_cast<int>(std::floor(b.value_a));
    b.reading_b = static_cast<int>(std::floor(b.value_b));
    return b;
}

int x_condition_bound(double beta_bar, double gamma_t, int ceiling) {
    const double r = std::isinf(beta_bar) ? 0.0 : std::exp(-2.0 * beta_bar);
    int last = -1;
    for (int m = 0; m <= ceiling; ++m) {
        const double fm = m;
        if (1.0 + gamma_t * ((fm + 1) * (fm + 2) * r - fm * (fm - 1)) < 0.0) break;
        last = m;
    }
    return last;
}

EmpiricalSweep empirical_sweep(double beta_bar, double gamma_t, const VacuumCoefficients& c, int ceiling,
                               bool renormalized) {
    const double t = time_from(gamma_t, c);
    EmpiricalSweep out;
    out.n_max = -1;
    for (int n = 0; n <= ceiling; ++n) {
        const int dim = std::max(n + 5, 6);
        CMatrix sigma = CMatrix::Zero(dim, dim);
        for (int m = 0; m < dim; ++m) sigma(m, m) = gibbs_weight(beta_bar, m);
        const Liouvillian L = liouvillian_xi_full(c, dim, renormalized);
        const CMatrix first = sigma + t * L.apply(sigma);
        const double ev = min_eigenvalue(first.topLeftCorner(n + 1, n + 1));
        out.min_eigenvalues.push_back(ev);
        if (ev < -1e-10) return out;
        out.n_max = n;
    }
    out.hit_ceiling = true;
    return out;
}

int empirical_n_max(double beta_bar, double gamma_t, const VacuumCoefficients& c, int ceiling, bool renormalized) {
    return empirical_sweep(beta_bar, gamma_t, c, ceiling, renormalized).n_max;
}

PositivityReport positivity_report(double beta_bar, double gamma_t, int n, const VacuumCoefficients& c,
                                   bool renormalized) {
    PositivityReport r;
    r.dim_tested = n;
    r.gamma_t = gamma_t;
    r.min_eigenvalue = min_eigenvalue(build_Sn(beta_bar, gamma_t, n, c, renormalized));
    r.passed = r.min_eigenvalue >= -1e-10;
    const NmaxBound b = n_max_bound(beta_bar);
    r.bound_reading_a = b.reading_a;
    r.bound_reading_b = b.reading_b;
    return r;
}

} // namespace gravvac
