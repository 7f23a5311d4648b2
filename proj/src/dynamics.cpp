#include "gravvac/dynamics.hpp"

#include "gravvac/error.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numbers>

namespace gravvac {

namespace {

CMatrix rk4_step(const Liouvillian& L, const CMatrix& y, double h) {
    const CMatrix k1 = L.apply(y);
    const CMatrix k2 = L.apply(y + (0.5 * h) * k1);
    const CMatrix k3 = L.apply(y + (0.5 * h) * k2);
    const CMatrix k4 = L.apply(y + h * k3);
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

struct DPResult {
    CMatrix y;
    double err;
};

DPResult dp_step(const Liouvillian& L, const CMatrix& y, double h) {
    (void)c2; (void)c3; (void)c4; (void)c5;  // autonomous system
    const CMatrix k1 = L.apply(y);
    const CMatrix k2 = L.apply(y + h * (a21 * k1));
    const CMatrix k3 = L.apply(y + h * (a31 * k1 + a32 * k2));
    const CMatrix k4 = L.apply(y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const CMatrix k5 = L.apply(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const CMatrix k6 = L.apply(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    CMatrix y5 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const CMatrix k7 = L.apply(y5);
    const CMatrix e = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    return {std::move(y5), e.cwiseAbs().maxCoeff()};
}

struct Recorder {
    Trajectory& tr;
    const EvolveOptions& opt;
    cplx trace0;

    // Returns false when the run must stop.
    bool record(double t, const CMatrix& rho) {
        StepDiagnostics d;
        d.trace_drift = std::abs(rho.trace() - trace0);
        d.hermiticity_drift = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
        d.min_eigenvalue = opt.check_positivity ? min_eigenvalue(rho) : 0.0;
        d.leakage = top_leakage(rho, 2);
        tr.times.push_back(t);
        tr.states.push_back(rho);
        tr.diagnostics.push_back(d);
        if (d.leakage > opt.leakage_threshold && !tr.leakage_flag) {
            tr.leakage_flag = true;
            tr.first_leakage_time = t;
        }
        std::string why;
        if (d.trace_drift > 1e-10) why = "trace drift";
        else if (d.hermiticity_drift > 1e-12 * std::max(1.0, rho.cwiseAbs().maxCoeff())) why = "Hermiticity drift";
        else if (d.min_eigenvalue < -1e-10) why = "negative eigenvalue";
        if (!why.empty()) {
            tr.valid = false;
            tr.first_invalid_time = t;
            tr.invalid_reason = why;
            return false;
        }
        return true;
    }
};

} // namespace

double default_time_step(const Liouvillian& L) {
    const Eigen::VectorXd e = effective_hamiltonian(L);
    double w = 1.0;
    for (Eigen::Index n = 0; n + 1 < e.size(); ++n) w = std::max(w, std::abs(e(n + 1) - e(n)));
    const double n = L.dim() - 1.0;
    w = std::max(w, L.coeffs().gamma * n * (n - 1.0));
    return 1e-3 * 2.0 * std::numbers::pi / w;
}

Trajectory evolve(const Liouvillian& L, const DensityMatrix& rho0, double t_final, const EvolveOptions& opt) {
    if (rho0.rows() != L.dim() || rho0.cols() != L.dim()) throw DomainError("evolve: dimension mismatch");
    if (!(t_final > 0.0)) throw DomainError("evolve: t_final must be > 0");
    if (opt.record_every < 1) throw DomainError("evolve: record_every must be >= 1");
    Trajectory tr;
    Recorder rec{tr, opt, rho0.trace()};
    CMatrix rho = rho0;
    if (!rec.record(0.0, rho)) return tr;

    if (!opt.tolerance) {
        const double dt_req = opt.dt > 0.0 ? opt.dt : default_time_step(L);
        const long n = std::max(1L, static_cast<long>(std::ceil(t_final / dt_req - 1e-9)));
        if (n > opt.max_steps) throw ConvergenceFailure("evolve: step budget exceeded");
        const double h = t_final / n;
        for (long k = 1; k <= n; ++k) {
            rho = rk4_step(L, rho, h);
            ++tr.steps;
            if (k % opt.record_every == 0 || k == n)
                if (!rec.record(k * h, rho)) return tr;
        }
        return tr;
    }

    const double tol = *opt.tolerance;
    if (!(tol > 0.0)) throw DomainError("evolve: tolerance must be > 0");
    double t = 0.0;
    double h = opt.dt > 0.0 ? opt.dt : default_time_step(L);
    while (t < t_final) {
        if (tr.steps >= opt.max_steps) throw ConvergenceFailure("evolve: step budget exceeded");
        const bool last = t + h >= t_final;
        const double hs = last ? t_final - t : h;
        DPResult r = dp_step(L, rho, hs);
        const double scale = tol * std::max(1.0, rho.cwiseAbs().maxCoeff());
        const double ratio = r.err / scale;
        if (ratio <= 1.0) {
            t = last ? t_final : t + hs;
            rho = std::move(r.y);
            ++tr.steps;
            if (tr.steps % opt.record_every == 0 || last)
                if (!rec.record(t, rho)) return tr;
        }
        const double fac = ratio == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(ratio, -0.2), 0.2, 5.0);
        h = hs * fac;
        if (h < opt.min_dt) throw ConvergenceFailure("evolve: step size underflow");
    }
    return tr;
}

namespace {

// Real coordinates of a Hermitian matrix: diagonal, then sqrt2 * (Re, Im) of the upper triangle.
Eigen::VectorXd herm_to_real(const CMatrix& h) {
    const int n = static_cast<int>(h.rows());
    Eigen::VectorXd v(n * n);
    int k = 0;
    for (int i = 0; i < n; ++i) v(k++) = h(i, i).real();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            v(k++) = std::sqrt(2.0) * h(i, j).real();
            v(k++) = std::sqrt(2.0) * h(i, j).imag();
        }
    return v;
}

CMatrix real_to_herm(const Eigen::VectorXd& v, int n) {
    CMatrix h = CMatrix::Zero(n, n);
    int k = 0;
    for (int i = 0; i < n; ++i) h(i, i) = v(k++);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double re = v(k++) / std::sqrt(2.0);
            const double im = v(k++) / std::sqrt(2.0);
            h(i, j) = cplx(re, im);
            h(j, i) = cplx(re, -im);
        }
    return h;
}

// Reduced row echelon form of the rows of m (real), in place; returns rank.
int rref(Eigen::MatrixXd& m, double tol) {
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        Eigen::Index p;
        const double best = m.col(c).tail(m.rows() - r).cwiseAbs().maxCoeff(&p);
        if (best <= tol) continue;
        m.row(r).swap(m.row(r + p));
        m.row(r) /= m(r, c);
        for (int i = 0; i < m.rows(); ++i)
            if (i != r) m.row(i) -= m(i, c) * m.row(r);
        ++r;
    }
    return r;
}

} // namespace

SteadyState steady_state(const Liouvillian& L, double rank_tol) {
    const int n = L.dim();
    const CMatrix M = L.dense();
    Eigen::BDCSVD<CMatrix> svd(M, Eigen::ComputeFullV);
    SteadyState out;
    out.singular_values = svd.singularValues();
    const double smax = out.singular_values.size() ? out.singular_values(0) : 0.0;
    const double thr = rank_tol * std::max(smax, 1e-300);
    std::vector<int> kernel;
    for (Eigen::Index k = 0; k < out.singular_values.size(); ++k) {
        const double s = out.singular_values(k);
        if (s > thr / 100.0 && s < thr * 100.0 && smax > 0.0)
            throw ConvergenceFailure("steady_state: ill-conditioned kernel (singular value near rank tolerance)");
        if (s <= thr) kernel.push_back(static_cast<int>(k));
    }
    out.kernel_dimension = static_cast<int>(kernel.size());
    if (!kernel.empty()) {
        // The kernel is closed under Hermitian conjugation; span it by Hermitian parts.
        Eigen::MatrixXd rows(2 * kernel.size(), n * n);
        int r = 0;
        for (int k : kernel) {
            const CVector v = svd.matrixV().col(k);
            const CMatrix K = Eigen::Map<const CMatrix>(v.data(), n, n);
            rows.row(r++) = herm_to_real(0.5 * (K + K.adjoint())).transpose();
            rows.row(r++) = herm_to_real(cplx(0.0, -0.5) * (K - K.adjoint())).transpose();
        }
        const int rank = rref(rows, 1e-8);
        for (int i = 0; i < rank; ++i) {
            CMatrix h = real_to_herm(rows.row(i).transpose(), n);
            const cplx tr = h.trace();
            if (std::abs(tr) > 1e-10) h /= tr.real();
            else h /= h.norm();
            out.stationary.push_back(h);
        }
    }
    // Undamped rotating modes.
    Eigen::ComplexEigenSolver<CMatrix> es(M, true);
    const double scale = std::max(smax, 1e-300);
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
        const cplx ev = es.eigenvalues()(k);
        if (std::abs(ev.real()) <= 1e-9 * scale && std::abs(ev.imag()) > 1e-9 * scale) {
            Eigen::Index idx;
            es.eigenvectors().col(k).cwiseAbs().maxCoeff(&idx);
            PersistentMode pm;
            pm.eigenvalue = ev;
            pm.row = static_cast<int>(idx % n);
            pm.col = static_cast<int>(idx / n);
            out.persistent.push_back(pm);
        }
    }
    std::sort(out.persistent.begin(), out.persistent.end(), [](const PersistentMode& a, const PersistentMode& b) {
        if (a.row != b.row) return a.row < b.row;
        return a.col < b.col;
    });
    return out;
}

Eigen::VectorXd long_time_populations(const Liouvillian& L, const DensityMatrix& rho0, double horizon,
                                      const EvolveOptions& opt, double rate_tol, double window) {
    if (!(horizon > 0.0) || !(window > 0.0)) throw DomainError("long_time_populations: horizon and window must be > 0");
    EvolveOptions o = opt;
    o.record_every = std::numeric_limits<int>::max();
    o.check_positivity = false;
    CMatrix rho = rho0;
    double t = 0.0;
    Eigen::VectorXd prev = rho.diagonal().real();
    while (t < horizon) {
        const double span = std::min(window, horizon - t);
        Trajectory tr = evolve(L, rho, span, o);
        if (!tr.valid) throw InvariantViolation("long_time_populations: " + tr.invalid_reason);
        rho = tr.states.back();
        t += span;
        const Eigen::VectorXd pop = rho.diagonal().real();
        const double rate = (pop - prev).cwiseAbs().maxCoeff() / span;
        prev = pop;
        if (rate < rate_tol) return pop;
    }
    throw ConvergenceFailure("long_time_populations: populations still changing at the horizon");
}

} // namespace gravvac
