#pragma once

#include <functional>

namespace gravvac {

/// Composite 16-point Gauss-Legendre over [a, b] with `panels` equal panels.
double gauss_legendre(const std::function<double(double)>& f, double a, double b, int panels);

/// Cauchy principal value of  int_a^b J(u) / (pole - u) du  for a < pole < b.
///
/// Symmetric excision of [pole - eps, pole + eps]; each side is mapped to a
/// logarithmic variable so the integrand stays bounded, and the excision error
/// (odd powers of eps) is removed by two Richardson levels.
/// `n_points` is the total node budget.
double principal_value(const std::function<double(double)>& J, double pole, double a, double b,
                       int n_points);

} // namespace gravvac
