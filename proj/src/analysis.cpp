#include "gravvac/analysis.hpp"

#include "gravvac/coeffs.hpp"
#include "gravvac/error.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <deque>

namespace gravvac {

double ladder_threshold(Variant v) { return is_full(v) ? 0.7 : 0.9; }

SpectralLadder extract_ladder(const Liouvillian& L, double threshold) {
    const int n = L.dim();
    if (n > kDenseLimit) throw DomainError("extract_ladder: dim must be <= 32");
    const CMatrix D = L.dense();
    const auto unit = [n](int row, int col) { return row + col * n; };

    std::vector<int> index_of(n * n, -1);
    std::vector<int> members;
    std::deque<int> queue;
    for (int k = 0; k + 1 < n; ++k) {
        const int u = unit(k, k + 1);
        index_of[u] = static_cast<int>(members.size());
        members.push_back(u);
        queue.push_back(u);
    }
    while (!queue.empty()) {
        const int j = queue.front();
        queue.pop_front();
        for (int i = 0; i < n * n; ++i) {
            if (index_of[i] >= 0 || D(i, j) == cplx(0.0)) continue;
            index_of[i] = static_cast<int>(members.size());
            members.push_back(i);
            queue.push_back(i);
        }
    }

    const int m = static_cast<int>(members.size());
    CMatrix block(m, m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) block(a, b) = D(members[a], members[b]);

    Eigen::ComplexEigenSolver<CMatrix> es(block);
    if (es.info() != Eigen::Success) throw ConvergenceFailure("extract_ladder: eigen-solver failed");
    const CMatrix& R = es.eigenvectors();
    const CMatrix Linv = R.inverse();

    Eigen::MatrixXd weight(m, m);  // weight(u, k)
    for (int k = 0; k < m; ++k) {
        double total = 0.0;
        for (int u = 0; u < m; ++u) {
            weight(u, k) = std::abs(Linv(k, u) * R(u, k));
            total += weight(u, k);
        }
        if (total > 0.0) weight.col(k) /= total;
    }

    SpectralLadder out;
    out.threshold = threshold > 0.0 ? threshold : ladder_threshold(L.variant());
    for (int k = 0; k + 1 < n; ++k) {
        const int u = index_of[unit(k, k + 1)];
        Eigen::Index best = 0;
        const double w = weight.row(u).maxCoeff(&best);
        const cplx ev = es.eigenvalues()(best);
        out.levels.push_back(k);
        out.transition_freqs.push_back(ev.imag());
        out.decay_rates.push_back(ev.real());
        out.overlaps.push_back(w);
        out.ambiguous.push_back(w < out.threshold);
    }
    return out;
}

std::vector<double> log_grid(double lo, double hi, int n) {
    if (n < 2 || !(lo > 0.0) || !(hi > lo)) throw DomainError("log_grid: need n >= 2 and 0 < lo < hi");
    std::vector<double> g(n);
    const double a = std::log(lo), b = std::log(hi);
    for (int i = 0; i < n; ++i) g[i] = std::exp(a + (b - a) * i / (n - 1));
    g.front() = lo;
    g.back() = hi;
    return g;
}

namespace {
// Least squares with unit-max-norm column scaling; returns coefficients in the
// original basis and the rms residual.
std::pair<Eigen::VectorXd, double> least_squares(Eigen::MatrixXd A, const Eigen::VectorXd& y) {
    Eigen::VectorXd scale(A.cols());
    for (Eigen::Index c = 0; c < A.cols(); ++c) {
        scale(c) = A.col(c).cwiseAbs().maxCoeff();
        if (scale(c) == 0.0) scale(c) = 1.0;
        A.col(c) /= scale(c);
    }
    Eigen::VectorXd x = A.colPivHouseholderQr().solve(y);
    const double rms = std::sqrt((A * x - y).squaredNorm() / static_cast<double>(y.size()));
    return {x.cwiseQuotient(scale), rms};
}
} // namespace

CutoffFit cutoff_sweep(FreeVariant v, const std::vector<double>& lambda_grid, double gamma_bar) {
    if (lambda_grid.size() < 8) throw DomainError("cutoff_sweep: lambda_grid needs >= 8 points");
    for (double l : lambda_grid)
        if (!(l - 2.0 > 1e-6)) throw DomainError("cutoff_sweep: lambda_grid too close to lambda = 2");

    CutoffFit fit;
    fit.variant = v;
    fit.lambda_grid = lambda_grid;
    fit.model = v == FreeVariant::x ? "log" : "cubic";
    const int n = static_cast<int>(lambda_grid.size());
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
        DimensionlessParams d;
        d.lambda_cut = lambda_grid[i];
        d.gamma_bar = gamma_bar;
        const ShiftSet s = v == FreeVariant::x ? shifts_x(d) : shifts_xi(d);
        y(i) = s.minus_r;
        fit.shift_values.push_back(s.minus_r);
    }
    const double ymax = y.cwiseAbs().maxCoeff();
    if (ymax == 0.0) {
        fit.status = "degenerate data";
        return fit;
    }

    const int cols = v == FreeVariant::x ? 2 : 5;
    Eigen::MatrixXd A(n, cols);
    for (int i = 0; i < n; ++i) {
        const double l = lambda_grid[i];
        if (v == FreeVariant::x) {
            A(i, 0) = std::log(l - 2.0);
            A(i, 1) = 1.0;
        } else {
            A.row(i) << l * l * l, l * l, l, 1.0, std::log(l - 2.0);
        }
    }
    const auto [coef, rms] = least_squares(A, y);
    fit.fit_params.assign(coef.data(), coef.data() + coef.size());
    fit.residual = rms / ymax;

    const double top = *std::max_element(lambda_grid.begin(), lambda_grid.end());
    std::vector<double> lx, ly;
    for (int i = 0; i < n; ++i)
        if (lambda_grid[i] >= top / 10.0 && y(i) != 0.0) {
            lx.push_back(std::log(lambda_grid[i]));
            ly.push_back(std::log(std::abs(y(i))));
        }
    if (lx.size() < 2) {
        fit.status = "degenerate data";
        return fit;
    }
    Eigen::MatrixXd B(lx.size(), 2);
    Eigen::VectorXd z(lx.size());
    for (std::size_t i = 0; i < lx.size(); ++i) {
        B(i, 0) = lx[i];
        B(i, 1) = 1.0;
        z(i) = ly[i];
    }
    fit.exponent = least_squares(B, z).first(0);
    return fit;
}

namespace {
ChannelReport channel_report(const Liouvillian& L, const DensityMatrix& rho0, double horizon, const EvolveOptions& opt,
                             int level, int row, int col) {
    const Trajectory tr = evolve(L, rho0, horizon, opt);
    if (!tr.valid) throw InvariantViolation("channel_discriminator: " + tr.invalid_reason);
    ChannelReport r;
    r.population_level = level;
    r.coherence_row = row;
    r.coherence_col = col;
    for (const auto& s : tr.states)
        for (int k = 0; k < s.rows(); ++k)
            r.max_population_change = std::max(r.max_population_change, std::abs(s(k, k).real() - rho0(k, k).real()));
    const DensityMatrix& last = tr.states.back();
    const double T = tr.times.back();
    r.population_rate = -std::log(last(level, level).real() / rho0(level, level).real()) / T;
    r.coherence_rate = -std::log(std::abs(last(row, col)) / std::abs(rho0(row, col))) / T;
    return r;
}
} // namespace

DiscriminatorReport channel_discriminator(const DensityMatrix& rho0, double rate, double horizon,
                                          const EvolveOptions& opt) {
    const int n = static_cast<int>(rho0.rows());
    if (n < 3 || std::abs(rho0(0, 2)) == 0.0) throw DomainError("channel_discriminator: rho0 needs nonzero rho_02");
    validate_density(rho0);
    int level = -1;
    for (int k = n - 1; k >= 2; --k)
        if (rho0(k, k).real() > 0.0) {
            level = k;
            break;
        }
    if (level < 0) throw DomainError("channel_discriminator: rho0 needs population above level 1");
    if (!(rate >= 0.0) || !(horizon > 0.0)) throw DomainError("channel_discriminator: need rate >= 0, horizon > 0");
    int row = 0, col = 2;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(rho0(i, j)) > std::abs(rho0(row, col))) {
                row = i;
                col = j;
            }
    DiscriminatorReport rep;
    rep.amplitude = channel_report(lindblad_amp(rate, n), rho0, horizon, opt, level, row, col);
    rep.phase = channel_report(lindblad_pha(rate, n), rho0, horizon, opt, level, row, col);
    rep.discriminated = rep.phase.max_population_change < 1e-12 && rep.amplitude.max_population_change > 1e-12;
    return rep;
}

std::set<int> populated_coherence_orders(const Liouvillian& L, const DensityMatrix& rho, int depth, double threshold) {
    std::set<int> orders;
    CMatrix x = rho;
    for (int d = 0; d <= depth; ++d) {
        for (int i = 0; i < x.rows(); ++i)
            for (int j = 0; j < x.cols(); ++j)
                if (i != j && std::abs(x(i, j)) > threshold) orders.insert(std::abs(i - j));
        x = L.apply(x);
    }
    return orders;
}

} // namespace gravvac
