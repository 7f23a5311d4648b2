#include "gravvac/fock.hpp"

#include "gravvac/csv.hpp"
#include "gravvac/error.hpp"

#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace gravvac {

namespace {
void require_dim(int dim) {
    if (dim < 2) throw DomainError("fock invariant violated: dim must be >= 2");
}
} // namespace

Ladder ladder(int dim) {
    require_dim(dim);
    Ladder l;
    l.lower = CMatrix::Zero(dim, dim);
    for (int n = 0; n + 1 < dim; ++n) l.lower(n, n + 1) = std::sqrt(static_cast<double>(n + 1));
    l.raise = l.lower.adjoint();
    return l;
}

FockOperator number_operator(int dim) {
    require_dim(dim);
    CMatrix n = CMatrix::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) n(k, k) = static_cast<double>(k);
    return n;
}

FockOperator identity(int dim) {
    require_dim(dim);
    return CMatrix::Identity(dim, dim);
}

DensityMatrix thermal_state(double beta_bar, int dim) {
    require_dim(dim);
    if (!(beta_bar > 0.0)) throw DomainError("beta_bar must be > 0");
    CMatrix rho = CMatrix::Zero(dim, dim);
    if (std::isinf(beta_bar)) {
        rho(0, 0) = 1.0;
        return rho;
    }
    std::vector<double> w(dim);
    double z = 0.0;
    for (int n = 0; n < dim; ++n) {
        w[n] = std::exp(-n * beta_bar);
        z += w[n];
    }
    for (int n = 0; n < dim; ++n) rho(n, n) = w[n] / z;
    return rho;
}

double gibbs_weight(double beta_bar, int m) {
    if (!(beta_bar > 0.0)) throw DomainError("beta_bar must be > 0");
    if (std::isinf(beta_bar)) return m == 0 ? 1.0 : 0.0;
    return -std::expm1(-beta_bar) * std::exp(-m * beta_bar);
}

DensityMatrix fock_state(int n, int dim) {
    require_dim(dim);
    if (n < 0 || n >= dim) throw DomainError("fock level outside truncation");
    CMatrix rho = CMatrix::Zero(dim, dim);
    rho(n, n) = 1.0;
    return rho;
}

DensityMatrix superposition(const std::vector<std::pair<int, cplx>>& amps, int dim) {
    require_dim(dim);
    CVector psi = CVector::Zero(dim);
    for (const auto& [n, a] : amps) {
        if (n < 0 || n >= dim) throw DomainError("superposition level outside truncation");
        psi(n) += a;
    }
    const double norm = psi.norm();
    if (norm == 0.0) throw DomainError("superposition has zero norm");
    psi /= norm;
    return psi * psi.adjoint();
}

cplx expectation(const FockOperator& op, const DensityMatrix& rho) {
    if (op.rows() != rho.rows() || op.cols() != rho.cols()) throw DomainError("expectation: dimension mismatch");
    return (op * rho).trace();
}

double min_eigenvalue(const CMatrix& rho) {
    const CMatrix h = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

DensityCheck check_density(const DensityMatrix& rho, double herm_tol, double trace_tol, double eig_tol) {
    DensityCheck c;
    c.hermiticity = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    c.trace_error = std::abs(rho.trace() - cplx(1.0, 0.0));
    c.min_eigenvalue = min_eigenvalue(rho);
    c.ok = c.hermiticity <= herm_tol && c.trace_error <= trace_tol && c.min_eigenvalue >= -eig_tol;
    return c;
}

void validate_density(const DensityMatrix& rho) {
    if (rho.rows() != rho.cols()) throw InvariantViolation("density matrix is not square");
    const DensityCheck c = check_density(rho);
    if (c.hermiticity > 1e-12) throw InvariantViolation("density matrix is not Hermitian");
    if (c.trace_error > 1e-10) throw InvariantViolation("density matrix trace differs from 1");
    if (c.min_eigenvalue < -1e-10) throw InvariantViolation("density matrix has a negative eigenvalue");
}

double top_leakage(const DensityMatrix& rho, int levels) {
    const int n = static_cast<int>(rho.rows());
    double s = 0.0;
    for (int k = std::max(0, n - levels); k < n; ++k) s += rho(k, k).real();
    return s;
}

void write_density_csv(std::ostream& os, const DensityMatrix& rho) {
    os << "dim=" << rho.rows() << '\n';
    for (Eigen::Index i = 0; i < rho.rows(); ++i) {
        for (Eigen::Index j = 0; j < rho.cols(); ++j) {
            if (j) os << ',';
            os << format_double(rho(i, j).real()) << ',' << format_double(rho(i, j).imag());
        }
        os << '\n';
    }
}

DensityMatrix read_density_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("dim=", 0) != 0) throw DomainError("density CSV: missing dim header");
    const int dim = std::stoi(line.substr(4));
    require_dim(dim);
    CMatrix rho(dim, dim);
    for (int i = 0; i < dim; ++i) {
        if (!std::getline(is, line)) throw DomainError("density CSV: missing row");
        std::stringstream ss(line);
        std::string cell;
        std::vector<double> vals;
        while (std::getline(ss, cell, ',')) vals.push_back(std::stod(cell));
        if (static_cast<int>(vals.size()) != 2 * dim) throw DomainError("density CSV: wrong row width");
        for (int j = 0; j < dim; ++j) rho(i, j) = cplx(vals[2 * j], vals[2 * j + 1]);
    }
    return rho;
}

} // namespace gravvac
