#include "gravvac/freepart.hpp"

#include "gravvac/error.hpp"

#include <cmath>
#include <string>

namespace gravvac {

namespace {
using cd = std::complex<double>;
const cd I(0.0, 1.0);

double factorial(int n) { return std::tgamma(n + 1.0); }

using Moments = std::map<std::pair<int, int>, cd>;

cd lookup(const Moments& m, int a, int b) {
    auto it = m.find({a, b});
    if (it == m.end())
        throw InvariantViolation("moment hierarchy not closed at (" + std::to_string(a) + "," + std::to_string(b) + ")");
    return it->second;
}

Moments rhs(FreeVariant v, const Moments& m, double d) {
    Moments out;
    for (const auto& [key, value] : m) {
        (void)value;
        const auto [a, b] = key;
        const double fb = b;
        cd r = 0.0;
        if (v == FreeVariant::x) {
            // (i)[H, p^a x^b] with H = p^2/2 + k p^4, k = d/4.
            const double k = d / 4.0;
            if (b >= 1) r += fb * lookup(m, a + 1, b - 1) + 4.0 * k * fb * lookup(m, a + 3, b - 1);
            if (b >= 2) {
                const double f2 = fb * (b - 1);
                r += I * f2 / 2.0 * lookup(m, a, b - 2) + 6.0 * I * k * f2 * lookup(m, a + 2, b - 2);
            }
            if (b >= 3) r += -4.0 * k * fb * (b - 1) * (b - 2) * lookup(m, a + 1, b - 3);
            if (b >= 4) r += -I * k * (fb * (b - 1) * (b - 2) * (b - 3)) * lookup(m, a, b - 4);
        } else {
            const double f = 1.0 + d * (b - a);
            if (b >= 1) r += f * fb * lookup(m, a + 1, b - 1);
            if (b >= 2) r += I * (f * fb * (b - 1) / 2.0) * lookup(m, a, b - 2);
        }
        out[key] = r;
    }
    return out;
}

Moments axpy(const Moments& y, double h, const Moments& k) {
    Moments out = y;
    for (auto& [key, v] : out) v += h * k.at(key);
    return out;
}
} // namespace

MomentTable::MomentTable(FreeVariant v, int max_b, int a_max) : variant_(v), max_b_(max_b), a_max_(a_max) {
    if (max_b < 0 || a_max < 0) throw DomainError("MomentTable: negative powers");
    entries_[{0, 0}] = 1.0;
}

bool MomentTable::tracks(int a, int b) const {
    return a >= 0 && b >= 0 && b <= max_b_ && a + 3 * b <= a_max_ + 3 * max_b_;
}

std::complex<double> MomentTable::get(int a, int b) const {
    auto it = entries_.find({a, b});
    if (it == entries_.end())
        throw DomainError("missing seed moment <p^" + std::to_string(a) + " q^" + std::to_string(b) + ">");
    return it->second;
}

void MomentTable::set(int a, int b, std::complex<double> v) {
    if (!tracks(a, b)) throw DomainError("moment outside tracked set");
    entries_[{a, b}] = v;
}

std::complex<double> MomentTable::qp_symmetric() const { return 2.0 * get(1, 1) + I; }

std::complex<double> MomentTable::p3q_symmetric() const { return 2.0 * get(3, 1) + 3.0 * I * get(2, 0); }

MomentTable gaussian_seed(FreeVariant v, const GaussianSeed& s, int max_b, int a_max) {
    if (!(s.var_q > 0.0) || !(s.var_p > 0.0)) throw DomainError("gaussian_seed: variances must be > 0");
    if (s.var_q * s.var_p - s.cov_qp * s.cov_qp < 0.25 - 1e-12)
        throw DomainError("gaussian_seed: covariance violates the uncertainty relation");
    MomentTable t(v, max_b, a_max);
    const cd C = s.cov_qp - 0.5 * I;  // ordered p-q contraction
    const int amax_total = a_max + 3 * max_b;
    for (int b = 0; b <= max_b; ++b) {
        for (int a = 0; a + 3 * b <= amax_total; ++a) {
            // a! b! [alpha^a beta^b] of the generating function.
            cd sum = 0.0;
            for (int k = 0; k <= std::min(a, b); ++k)
                for (int i = 0; 2 * i <= a - k; ++i)
                    for (int j = 0; 2 * j <= b - k; ++j) {
                        const int ra = a - k - 2 * i, rb = b - k - 2 * j;
                        sum += std::pow(C, k) / factorial(k) * std::pow(s.var_p / 2.0, i) / factorial(i) *
                               std::pow(s.var_q / 2.0, j) / factorial(j) * std::pow(s.p_mean, ra) / factorial(ra) *
                               std::pow(s.q_mean, rb) / factorial(rb);
                    }
            t.set(a, b, sum * factorial(a) * factorial(b));
        }
    }
    return t;
}

ClosedForm closed_form_x(const MomentTable& m, double dx, double t) {
    ClosedForm r;
    const double p1 = m.get(1, 0).real(), p2 = m.get(2, 0).real(), p3 = m.get(3, 0).real();
    const double p4 = m.get(4, 0).real(), p6 = m.get(6, 0).real();
    const double x1 = m.get(0, 1).real(), x2 = m.get(0, 2).real();
    const double s1 = m.qp_symmetric().real(), s3 = m.p3q_symmetric().real();
    r.mean = (p1 + dx * p3) * t + x1;
    r.second = (p2 + 2.0 * dx * p4 + dx * dx * p6) * t * t + (s1 + dx * s3) * t + x2;
    for (int n = 1; n <= 6; ++n) r.momentum.push_back(m.get(n, 0));
    return r;
}

ClosedForm closed_form_xi(const MomentTable& m, double dxi, double mu_xi, double t) {
    if (!(mu_xi > 0.0)) throw DomainError("closed_form_xi: mu_xi must be > 0");
    ClosedForm r;
    const double p1 = m.get(1, 0).real(), p2 = m.get(2, 0).real();
    const double x1 = m.get(0, 1).real(), x2 = m.get(0, 2).real();
    const double s1 = m.qp_symmetric().real();
    r.mean = p1 * t / mu_xi + x1;
    r.second = p2 / (mu_xi * mu_xi) * (1.0 - dxi) * t * t + s1 / mu_xi * (1.0 + dxi) * t + x2;
    for (int n = 1; n <= 6; ++n) r.momentum.push_back(m.get(n, 0));
    return r;
}

std::map<std::pair<int, int>, std::complex<double>> moment_derivative(const MomentTable& m, double delta) {
    return rhs(m.variant(), m.entries(), delta);
}

MomentTable moment_ode_oracle(FreeVariant v, const MomentTable& init, double delta, double t, double dt) {
    if (!(dt > 0.0) || !(t >= 0.0)) throw DomainError("moment_ode_oracle: need dt > 0 and t >= 0");
    MomentTable out(v, init.max_b(), init.a_max());
    Moments y;
    for (int b = 0; b <= init.max_b(); ++b)
        for (int a = 0; init.tracks(a, b); ++a) y[{a, b}] = init.get(a, b);
    const long n = std::max(1L, static_cast<long>(std::ceil(t / dt - 1e-12)));
    const double h = t / n;
    for (long s = 0; s < n && t > 0.0; ++s) {
        const Moments k1 = rhs(v, y, delta);
        const Moments k2 = rhs(v, axpy(y, h / 2, k1), delta);
        const Moments k3 = rhs(v, axpy(y, h / 2, k2), delta);
        const Moments k4 = rhs(v, axpy(y, h, k3), delta);
        for (auto& [key, val] : y) val += h / 6.0 * (k1.at(key) + 2.0 * k2.at(key) + 2.0 * k3.at(key) + k4.at(key));
    }
    for (const auto& [key, val] : y) out.set(key.first, key.second, val);
    return out;
}

} // namespace gravvac
