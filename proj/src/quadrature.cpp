#include "gravvac/quadrature.hpp"

#include "gravvac/error.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>

namespace gravvac {

namespace {
using Rule = boost::math::quadrature::gauss<double, 16>;

double excised(const std::function<double(double)>& J, double pole, double a, double b, double eps,
               int panels) {
    // Left: u = pole - e^s, du/(pole-u) = -ds. Right: u = pole + e^s.
    const double le = std::log(eps);
    double left = gauss_legendre([&](double s) { return J(pole - std::exp(s)); }, le,
                                 std::log(pole - a), panels);
    double right = gauss_legendre([&](double s) { return J(pole + std::exp(s)); }, le,
                                  std::log(b - pole), panels);
    return left - right;
}
} // namespace

double gauss_legendre(const std::function<double(double)>& f, double a, double b, int panels) {
    if (panels < 1) throw DomainError("gauss_legendre: panels must be >= 1");
    const double h = (b - a) / panels;
    double sum = 0.0;
    for (int k = 0; k < panels; ++k) {
        const double lo = a + k * h;
        sum += Rule::integrate(f, lo, lo + h);
    }
    return sum;
}

double principal_value(const std::function<double(double)>& J, double pole, double a, double b,
                       int n_points) {
    if (!(a < pole && pole < b)) throw DomainError("principal_value: pole must lie inside (a, b)");
    // Six side integrals (two sides, three excision widths) share the budget.
    const int panels = std::max(1, n_points / (6 * 16));
    const double eps = 0.25 * std::min(pole - a, b - pole);
    const double v1 = excised(J, pole, a, b, eps, panels);
    const double v2 = excised(J, pole, a, b, eps / 2, panels);
    const double v4 = excised(J, pole, a, b, eps / 4, panels);
    // Excision error is c1 eps + c3 eps^3 + ...
    const double r1 = 2.0 * v2 - v1;
    const double r2 = 2.0 * v4 - v2;
    return (8.0 * r2 - r1) / 7.0;
}

} // namespace gravvac
