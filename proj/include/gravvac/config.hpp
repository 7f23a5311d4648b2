#pragma once

#include "gravvac/coeffs.hpp"
#include "gravvac/error.hpp"
#include "gravvac/fock.hpp"
#include "gravvac/generators.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gravvac {

/// Error in configuration input; the message names the offending key.
class ConfigError : public DomainError {
public:
    using DomainError::DomainError;
};

enum class Scenario { coeffs, evolve, steady, ladder, sweep_cutoff, free_particle, validity, discriminate };

std::string to_string(Scenario s);
Scenario parse_scenario(const std::string& s);

struct Amplitude {
    int n = 0;
    double re = 0.0, im = 0.0;
    bool operator==(const Amplitude&) const = default;
};

struct ScenarioConfig {
    Scenario scenario = Scenario::coeffs;

    PhysicalParams params;
    double coupling_scale = 1.0;
    std::optional<double> lambda_cut;  // default omega_max / omega
    std::optional<double> gamma_bar;   // effective Gamma / omega; default coupling_scale Gamma_SI / omega

    int dim = 12;
    Variant variant = Variant::x_rwa;
    bool renormalized = true;

    std::string initial_state = "thermal";  // thermal | fock | superposition
    double beta_bar = 2.0;
    int fock_n = 0;
    std::vector<Amplitude> superposition;

    double t_final = 10.0;
    double dt = 0.0;          // 0: default step
    double tolerance = 0.0;   // > 0: adaptive
    int record_every = 1;
    std::vector<std::pair<int, int>> coherences;

    double horizon = 200.0;   // steady, discriminate

    double lambda_min = 10.0, lambda_max = 1e4;
    int lambda_points = 16;

    std::string free_variant = "x";
    double free_delta = 0.01;
    double q_mean = 0.0, p_mean = 1.0, var_q = 0.5, var_p = 0.5, cov_qp = 0.0;

    double gamma_t = 1e-3;
    int n_ceiling = 60;

    double rate = 0.1;

    std::string output;  // empty: standard output
    int jobs = 1;

    bool operator==(const ScenarioConfig&) const = default;

    DimensionlessParams dimensionless() const;
    VacuumCoefficients coefficients() const;
    DensityMatrix initial_density() const;
};

/// JSON document or key=value lines, detected by a leading '{'.
ScenarioConfig parse_config(const std::string& text);

/// Both forms at once; JSON wins where a key appears in both.
ScenarioConfig parse_config(const std::string& json_text, const std::string& kv_text);

/// `text` in either form, then command-line style overrides applied in order (they win).
ScenarioConfig parse_config(const std::string& text, const std::vector<std::pair<std::string, std::string>>& overrides);

/// Applies one key=value override (as the command line does).
void apply_override(ScenarioConfig& cfg, const std::string& key, const std::string& value);

/// Every key with its resolved value, sorted, one "key=value" per line. Parses back to
/// an equal config.
std::string serialize_config(const ScenarioConfig& cfg);

/// All recognised keys.
const std::vector<std::string>& config_keys();

/// Checks invariants (dim, parameter domains); throws ConfigError.
void validate_config(const ScenarioConfig& cfg);

/// Exit status mapping: 0 ok, 2 config/domain error, 3 invariant violation, 4 non-convergence.
enum ExitCode { exit_ok = 0, exit_config = 2, exit_invariant = 3, exit_convergence = 4 };

/// Runs the scenario and writes CSV to `out`. Throws the module errors.
void run_scenario(const ScenarioConfig& cfg, std::ostream& out);

/// run_scenario with output routing and error mapping; writes
/// "error code=<n> kind=<kind> message=<text>" to `err` on failure.
int run(const ScenarioConfig& cfg, std::ostream& out, std::ostream& err);

} // namespace gravvac
