#include "gravvac/analysis.hpp"
#include "gravvac/config.hpp"
#include "gravvac/csv.hpp"
#include "gravvac/dynamics.hpp"
#include "gravvac/freepart.hpp"
#include "gravvac/perturb.hpp"
#include "gravvac/validity.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

namespace gravvac {

namespace {

using Row = std::vector<std::string>;

void write_row(std::ostream& out, const Row& r) { out << join_csv(r) << '\n'; }

std::string fd(double v) { return format_double(v); }

void write_header(std::ostream& out, const ScenarioConfig& cfg) {
    std::istringstream is(serialize_config(cfg));
    std::string line;
    while (std::getline(is, line)) out << "# " << line << '\n';
    if (cfg.scenario != Scenario::free_particle) {
        const DimensionlessParams d = cfg.dimensionless();
        out << "# resolved.lambda_cut=" << fd(d.lambda_cut) << '\n';
        out << "# resolved.gamma_bar=" << fd(d.gamma_bar) << '\n';
    }
}

EvolveOptions evolve_options(const ScenarioConfig& cfg) {
    EvolveOptions o;
    o.dt = cfg.dt;
    if (cfg.tolerance > 0.0) o.tolerance = cfg.tolerance;
    o.record_every = cfg.record_every;
    return o;
}

Liouvillian generator(const ScenarioConfig& cfg) {
    return make_liouvillian(cfg.variant, cfg.coefficients(), cfg.dim, cfg.renormalized);
}

Row coefficient_row(const DimensionlessParams& d) {
    const VacuumCoefficients c = vacuum_coefficients(d);
    return {fd(d.lambda_cut), fd(c.gamma), fd(c.delta_plus), fd(c.delta_minus), fd(c.delta_minus_r),
            fd(c.big_delta_plus), fd(c.big_delta_minus), fd(c.big_delta_minus_r)};
}

const Row kCoefficientColumns = {"lambda_cut",     "gamma",           "delta_plus",      "delta_minus",
                                 "delta_minus_r",  "big_delta_plus",  "big_delta_minus", "big_delta_minus_r"};

void run_coeffs(const ScenarioConfig& cfg, std::ostream& out) {
    write_row(out, kCoefficientColumns);
    write_row(out, coefficient_row(cfg.dimensionless()));
}

void run_evolve(const ScenarioConfig& cfg, std::ostream& out) {
    const Liouvillian L = generator(cfg);
    const Trajectory tr = evolve(L, cfg.initial_density(), cfg.t_final, evolve_options(cfg));
    Row head{"time"};
    for (int n = 0; n < cfg.dim; ++n) head.push_back("p" + std::to_string(n));
    for (const auto& [a, b] : cfg.coherences) {
        head.push_back("re_rho_" + std::to_string(a) + "_" + std::to_string(b));
        head.push_back("im_rho_" + std::to_string(a) + "_" + std::to_string(b));
    }
    for (const char* h : {"trace_drift", "hermiticity_drift", "min_eigenvalue", "leakage"}) head.push_back(h);
    write_row(out, head);
    for (std::size_t k = 0; k < tr.times.size(); ++k) {
        const DensityMatrix& s = tr.states[k];
        Row r{fd(tr.times[k])};
        for (int n = 0; n < cfg.dim; ++n) r.push_back(fd(s(n, n).real()));
        for (const auto& [a, b] : cfg.coherences) {
            r.push_back(fd(s(a, b).real()));
            r.push_back(fd(s(a, b).imag()));
        }
        const StepDiagnostics& d = tr.diagnostics[k];
        for (double v : {d.trace_drift, d.hermiticity_drift, d.min_eigenvalue, d.leakage}) r.push_back(fd(v));
        write_row(out, r);
    }
    if (!tr.valid) throw InvariantViolation("evolve: " + tr.invalid_reason);
}

void run_steady(const ScenarioConfig& cfg, std::ostream& out) {
    const Liouvillian L = generator(cfg);
    const DensityMatrix rho0 = cfg.initial_density();
    const Eigen::VectorXd pops = long_time_populations(L, rho0, cfg.horizon, evolve_options(cfg));
    if (cfg.dim <= kDenseLimit) out << "# kernel_dimension=" << steady_state(L).kernel_dimension << '\n';
    Row head{"row"};
    for (int n = 0; n < cfg.dim; ++n) head.push_back("p" + std::to_string(n));
    write_row(out, head);
    Row parity{"seed_parity"};
    double even = 0.0, odd = 0.0;
    for (int n = 0; n < cfg.dim; ++n) (n % 2 == 0 ? even : odd) += rho0(n, n).real();
    for (int n = 0; n < cfg.dim; ++n) parity.push_back(fd(n == 0 ? even : n == 1 ? odd : 0.0));
    write_row(out, parity);
    Row lt{"long_time"};
    for (int n = 0; n < cfg.dim; ++n) lt.push_back(fd(pops(n)));
    write_row(out, lt);
}

void run_ladder(const ScenarioConfig& cfg, std::ostream& out) {
    const Liouvillian L = generator(cfg);
    const Eigen::VectorXd E = effective_hamiltonian(L);
    const SpectralLadder sl = extract_ladder(L);
    auto [p, m] = active_shifts(cfg.variant, L.coeffs(), cfg.renormalized);
    if (!is_full(cfg.variant)) p = 0.0;
    write_row(out, {"n", "pt_shift", "generator_shift", "difference", "spectrum_freq", "generator_freq", "decay_rate",
                    "overlap", "ambiguous"});
    for (std::size_t k = 0; k < sl.levels.size(); ++k) {
        const int n = sl.levels[k];
        const double pt = multimode_shift(n, p, m);
        const double gen = E(n) - n;
        write_row(out, {std::to_string(n), fd(pt), fd(gen), fd(gen - pt), fd(sl.transition_freqs[k]),
                        fd(E(n + 1) - E(n)), fd(sl.decay_rates[k]), fd(sl.overlaps[k]),
                        sl.ambiguous[k] ? "1" : "0"});
    }
}

void run_sweep(const ScenarioConfig& cfg, std::ostream& out) {
    const std::vector<double> grid = log_grid(cfg.lambda_min, cfg.lambda_max, cfg.lambda_points);
    const DimensionlessParams base = cfg.dimensionless();
    std::vector<Row> rows(grid.size());
    auto work = [&](std::size_t begin, std::size_t stride) {
        for (std::size_t i = begin; i < grid.size(); i += stride) {
            DimensionlessParams d = base;
            d.lambda_cut = grid[i];
            rows[i] = coefficient_row(d);
        }
    };
    const std::size_t jobs = std::min<std::size_t>(cfg.jobs, grid.size());
    std::vector<std::thread> pool;
    for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(work, j, jobs);
    work(0, jobs);
    for (auto& t : pool) t.join();

    for (FreeVariant v : {FreeVariant::x, FreeVariant::xi}) {
        const CutoffFit f = cutoff_sweep(v, grid, base.gamma_bar);
        const std::string tag = v == FreeVariant::x ? "# fit.x." : "# fit.xi.";
        out << tag << "model=" << f.model << '\n' << tag << "status=" << f.status << '\n';
        std::vector<std::string> ps;
        for (double q : f.fit_params) ps.push_back(fd(q));
        out << tag << "params=" << join_csv(ps) << '\n';
        out << tag << "residual=" << fd(f.residual) << '\n' << tag << "exponent=" << fd(f.exponent) << '\n';
    }
    write_row(out, kCoefficientColumns);
    for (const auto& r : rows) write_row(out, r);
}

void run_free(const ScenarioConfig& cfg, std::ostream& out) {
    const FreeVariant v = cfg.free_variant == "x" ? FreeVariant::x : FreeVariant::xi;
    GaussianSeed s;
    s.q_mean = cfg.q_mean;
    s.p_mean = cfg.p_mean;
    s.var_q = cfg.var_q;
    s.var_p = cfg.var_p;
    s.cov_qp = cfg.cov_qp;
    const MomentTable init = gaussian_seed(v, s);
    const double delta = cfg.free_delta;
    const double dt = cfg.dt > 0.0 ? cfg.dt : 1e-2;
    const long steps = std::max(1L, std::lround(std::ceil(cfg.t_final / dt - 1e-9)));
    const double h = cfg.t_final / steps;
    write_row(out, {"time", "mean_closed", "second_closed", "mean_recurrence", "second_recurrence", "p1", "p2"});
    MomentTable cur = init;
    double t = 0.0;
    auto emit = [&](double time) {
        const ClosedForm cf = v == FreeVariant::x ? closed_form_x(init, delta, time)
                                                  : closed_form_xi(init, delta, 1.0 / (1.0 - delta), time);
        write_row(out, {fd(time), fd(cf.mean), fd(cf.second), fd(cur.get(0, 1).real()), fd(cur.get(0, 2).real()),
                        fd(cur.get(1, 0).real()), fd(cur.get(2, 0).real())});
    };
    emit(0.0);
    for (long k = 1; k <= steps; ++k) {
        cur = moment_ode_oracle(v, cur, delta, h, h);
        t = cfg.t_final * static_cast<double>(k) / static_cast<double>(steps);
        if (k % cfg.record_every == 0 || k == steps) emit(t);
    }
}

void run_validity(const ScenarioConfig& cfg, std::ostream& out) {
    const VacuumCoefficients c = cfg.coefficients();
    const NmaxBound b = n_max_bound(cfg.beta_bar);
    const int xb = x_condition_bound(cfg.beta_bar, cfg.gamma_t);
    const EmpiricalSweep sw = empirical_sweep(cfg.beta_bar, cfg.gamma_t, c, cfg.n_ceiling, cfg.renormalized);
    write_row(out, {"beta_bar", "gamma_t", "reading_a", "reading_b", "x_condition_bound", "empirical_n_max", "n",
                    "min_eigenvalue"});
    for (std::size_t n = 0; n < sw.min_eigenvalues.size(); ++n)
        write_row(out, {fd(cfg.beta_bar), fd(cfg.gamma_t), std::to_string(b.reading_a), std::to_string(b.reading_b),
                        std::to_string(xb), std::to_string(sw.n_max), std::to_string(n), fd(sw.min_eigenvalues[n])});
}

void run_discriminate(const ScenarioConfig& cfg, std::ostream& out) {
    const DiscriminatorReport r = channel_discriminator(cfg.initial_density(), cfg.rate, cfg.horizon, evolve_options(cfg));
    out << "# discriminated=" << (r.discriminated ? "true" : "false") << '\n';
    write_row(out, {"channel", "max_population_change", "population_level", "population_rate", "coherence",
                    "coherence_rate"});
    for (const auto& [name, c] : {std::pair{"amplitude", r.amplitude}, std::pair{"phase", r.phase}})
        write_row(out, {name, fd(c.max_population_change), std::to_string(c.population_level), fd(c.population_rate),
                        std::to_string(c.coherence_row) + "-" + std::to_string(c.coherence_col),
                        fd(c.coherence_rate)});
}

} // namespace

void run_scenario(const ScenarioConfig& cfg, std::ostream& out) {
    validate_config(cfg);
    write_header(out, cfg);
    switch (cfg.scenario) {
    case Scenario::coeffs: return run_coeffs(cfg, out);
    case Scenario::evolve: return run_evolve(cfg, out);
    case Scenario::steady: return run_steady(cfg, out);
    case Scenario::ladder: return run_ladder(cfg, out);
    case Scenario::sweep_cutoff: return run_sweep(cfg, out);
    case Scenario::free_particle: return run_free(cfg, out);
    case Scenario::validity: return run_validity(cfg, out);
    case Scenario::discriminate: return run_discriminate(cfg, out);
    }
}

namespace {
int fail(std::ostream& err, int code, const char* kind, const std::string& msg) {
    err << "error code=" << code << " kind=" << kind << " message=" << msg << '\n';
    return code;
}
} // namespace

int run(const ScenarioConfig& cfg, std::ostream& out, std::ostream& err) {
    std::ostringstream buf;
    int code = exit_ok;
    try {
        run_scenario(cfg, buf);
    } catch (const DomainError& e) {
        code = fail(err, exit_config, "config", e.what());
    } catch (const InvariantViolation& e) {
        code = fail(err, exit_invariant, "invariant", e.what());
    } catch (const ConvergenceFailure& e) {
        code = fail(err, exit_convergence, "convergence", e.what());
    } catch (const std::exception& e) {
        code = fail(err, exit_invariant, "internal", e.what());
    }
    if (buf.str().empty()) return code;
    if (cfg.output.empty()) {
        out << buf.str();
    } else {
        std::ofstream f(cfg.output, std::ios::binary);
        if (!f) return fail(err, exit_config, "config", "output: cannot open " + cfg.output);
        f << buf.str();
    }
    return code;
}

} // namespace gravvac
