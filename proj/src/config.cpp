#include "gravvac/config.hpp"

#include "gravvac/csv.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

namespace gravvac {

using nlohmann::json;

std::string to_string(Scenario s) {
    switch (s) {
    case Scenario::coeffs: return "coeffs";
    case Scenario::evolve: return "evolve";
    case Scenario::steady: return "steady";
    case Scenario::ladder: return "ladder";
    case Scenario::sweep_cutoff: return "sweep-cutoff";
    case Scenario::free_particle: return "free-particle";
    case Scenario::validity: return "validity";
    case Scenario::discriminate: return "discriminate";
    }
    return "coeffs";
}

Scenario parse_scenario(const std::string& s) {
    for (Scenario v : {Scenario::coeffs, Scenario::evolve, Scenario::steady, Scenario::ladder, Scenario::sweep_cutoff,
                       Scenario::free_particle, Scenario::validity, Scenario::discriminate})
        if (to_string(v) == s) return v;
    throw ConfigError("scenario: unknown scenario '" + s + "'");
}

namespace {

enum class Kind { real, integer, boolean, text, optional_real, amplitudes, pairs };

struct Key {
    Kind kind;
    std::function<void(ScenarioConfig&, const json&)> set;
    std::function<std::string(const ScenarioConfig&)> get;
};

[[noreturn]] void mismatch(const std::string& key, const char* expected) {
    throw ConfigError(key + ": type mismatch, expected " + expected);
}

double as_real(const std::string& key, const json& v) {
    if (!v.is_number()) mismatch(key, "number");
    return v.get<double>();
}

int as_int(const std::string& key, const json& v) {
    if (v.is_number_integer()) return v.get<int>();
    if (v.is_number_float()) {
        const double d = v.get<double>();
        if (std::floor(d) == d && std::abs(d) < 2e9) return static_cast<int>(d);
    }
    mismatch(key, "integer");
}

bool as_bool(const std::string& key, const json& v) {
    if (!v.is_boolean()) mismatch(key, "boolean");
    return v.get<bool>();
}

std::string as_text(const std::string& key, const json& v) {
    if (!v.is_string()) mismatch(key, "string");
    return v.get<std::string>();
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(cur);
    return out;
}

double parse_number(const std::string& key, const std::string& s) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    mismatch(key, "number");
}

std::vector<Amplitude> as_amplitudes(const std::string& key, const json& v) {
    std::vector<Amplitude> out;
    if (v.is_string()) {
        for (const auto& item : split(v.get<std::string>(), ',')) {
            if (item.empty()) continue;
            const auto parts = split(item, ':');
            if (parts.size() < 2 || parts.size() > 3) mismatch(key, "list of n:re[:im]");
            Amplitude a;
            a.n = static_cast<int>(parse_number(key, parts[0]));
            a.re = parse_number(key, parts[1]);
            a.im = parts.size() == 3 ? parse_number(key, parts[2]) : 0.0;
            out.push_back(a);
        }
        return out;
    }
    if (!v.is_array()) mismatch(key, "list of n:re[:im]");
    for (const auto& e : v) {
        if (!e.is_array() || e.size() < 2 || e.size() > 3) mismatch(key, "list of [n, re, im]");
        Amplitude a;
        a.n = as_int(key, e[0]);
        a.re = as_real(key, e[1]);
        a.im = e.size() == 3 ? as_real(key, e[2]) : 0.0;
        out.push_back(a);
    }
    return out;
}

std::vector<std::pair<int, int>> as_pairs(const std::string& key, const json& v) {
    std::vector<std::pair<int, int>> out;
    if (v.is_string()) {
        for (const auto& item : split(v.get<std::string>(), ',')) {
            if (item.empty()) continue;
            const auto parts = split(item, '-');
            if (parts.size() != 2) mismatch(key, "list of n-m");
            out.emplace_back(static_cast<int>(parse_number(key, parts[0])), static_cast<int>(parse_number(key, parts[1])));
        }
        return out;
    }
    if (!v.is_array()) mismatch(key, "list of n-m");
    for (const auto& e : v) {
        if (!e.is_array() || e.size() != 2) mismatch(key, "list of [n, m]");
        out.emplace_back(as_int(key, e[0]), as_int(key, e[1]));
    }
    return out;
}

#define REAL_KEY(name, member)                                                                                 \
    {                                                                                                          \
        name, {                                                                                                \
            Kind::real, [](ScenarioConfig& c, const json& v) { c.member = as_real(name, v); },                \
                [](const ScenarioConfig& c) { return format_double(c.member); }                                \
        }                                                                                                      \
    }
#define INT_KEY(name, member)                                                                                  \
    {                                                                                                          \
        name, {                                                                                                \
            Kind::integer, [](ScenarioConfig& c, const json& v) { c.member = as_int(name, v); },              \
                [](const ScenarioConfig& c) { return std::to_string(c.member); }                               \
        }                                                                                                      \
    }
#define TEXT_KEY(name, member)                                                                                 \
    {                                                                                                          \
        name, {                                                                                                \
            Kind::text, [](ScenarioConfig& c, const json& v) { c.member = as_text(name, v); },                \
                [](const ScenarioConfig& c) { return c.member; }                                               \
        }                                                                                                      \
    }
#define OPT_KEY(name, member)                                                                                  \
    {                                                                                                          \
        name, {                                                                                                \
            Kind::optional_real,                                                                               \
                [](ScenarioConfig& c, const json& v) {                                                         \
                    if (v.is_string() && v.get<std::string>() == "auto")                                       \
                        c.member.reset();                                                                      \
                    else                                                                                       \
                        c.member = as_real(name, v);                                                           \
                },                                                                                             \
                [](const ScenarioConfig& c) { return c.member ? format_double(*c.member) : std::string("auto"); } \
        }                                                                                                      \
    }

const std::map<std::string, Key>& key_table() {
    static const std::map<std::string, Key> table = {
        {"scenario",
         {Kind::text, [](ScenarioConfig& c, const json& v) { c.scenario = parse_scenario(as_text("scenario", v)); },
          [](const ScenarioConfig& c) { return to_string(c.scenario); }}},
        {"variant",
         {Kind::text,
          [](ScenarioConfig& c, const json& v) {
              try {
                  c.variant = parse_variant(as_text("variant", v));
              } catch (const ConfigError&) {
                  throw;
              } catch (const std::exception& e) {
                  throw ConfigError(std::string("variant: ") + e.what());
              }
          },
          [](const ScenarioConfig& c) { return to_string(c.variant); }}},
        {"renormalized",
         {Kind::boolean, [](ScenarioConfig& c, const json& v) { c.renormalized = as_bool("renormalized", v); },
          [](const ScenarioConfig& c) { return std::string(c.renormalized ? "true" : "false"); }}},
        REAL_KEY("mu", params.mu),
        REAL_KEY("omega", params.omega),
        REAL_KEY("omega_max", params.omega_max),
        REAL_KEY("G", params.G),
        REAL_KEY("hbar", params.hbar),
        REAL_KEY("c", params.c),
        REAL_KEY("coupling_scale", coupling_scale),
        OPT_KEY("lambda_cut", lambda_cut),
        OPT_KEY("gamma_bar", gamma_bar),
        INT_KEY("dim", dim),
        TEXT_KEY("initial_state", initial_state),
        REAL_KEY("beta_bar", beta_bar),
        INT_KEY("fock_n", fock_n),
        {"superposition",
         {Kind::amplitudes,
          [](ScenarioConfig& c, const json& v) { c.superposition = as_amplitudes("superposition", v); },
          [](const ScenarioConfig& c) {
              std::vector<std::string> items;
              for (const auto& a : c.superposition)
                  items.push_back(std::to_string(a.n) + ":" + format_double(a.re) + ":" + format_double(a.im));
              return join_csv(items);
          }}},
        REAL_KEY("t_final", t_final),
        REAL_KEY("dt", dt),
        REAL_KEY("tolerance", tolerance),
        INT_KEY("record_every", record_every),
        {"coherences",
         {Kind::pairs, [](ScenarioConfig& c, const json& v) { c.coherences = as_pairs("coherences", v); },
          [](const ScenarioConfig& c) {
              std::vector<std::string> items;
              for (const auto& [a, b] : c.coherences) items.push_back(std::to_string(a) + "-" + std::to_string(b));
              return join_csv(items);
          }}},
        REAL_KEY("horizon", horizon),
        REAL_KEY("lambda_min", lambda_min),
        REAL_KEY("lambda_max", lambda_max),
        INT_KEY("lambda_points", lambda_points),
        TEXT_KEY("free_variant", free_variant),
        REAL_KEY("free_delta", free_delta),
        REAL_KEY("q_mean", q_mean),
        REAL_KEY("p_mean", p_mean),
        REAL_KEY("var_q", var_q),
        REAL_KEY("var_p", var_p),
        REAL_KEY("cov_qp", cov_qp),
        REAL_KEY("gamma_t", gamma_t),
        INT_KEY("n_ceiling", n_ceiling),
        REAL_KEY("rate", rate),
        TEXT_KEY("output", output),
        INT_KEY("jobs", jobs),
    };
    return table;
}

#undef REAL_KEY
#undef INT_KEY
#undef TEXT_KEY
#undef OPT_KEY

const Key& lookup_key(const std::string& key) {
    const auto& t = key_table();
    const auto it = t.find(key);
    if (it == t.end()) throw ConfigError("unknown key: " + key);
    return it->second;
}

// key=value text values: strings stay raw, everything else is read as a JSON literal.
json kv_value(const std::string& key, const std::string& raw) {
    const Kind k = lookup_key(key).kind;
    if (k == Kind::text || k == Kind::amplitudes || k == Kind::pairs) return raw;
    if (k == Kind::optional_real && raw == "auto") return raw;
    json v = json::parse(raw, nullptr, false);
    if (v.is_discarded()) mismatch(key, k == Kind::boolean ? "boolean" : k == Kind::integer ? "integer" : "number");
    return v;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// Ordered (key, value) list from each input form.
std::vector<std::pair<std::string, json>> read_kv(const std::string& text) {
    std::vector<std::pair<std::string, json>> out;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key=value");
        const std::string key = trim(t.substr(0, eq));
        out.emplace_back(key, kv_value(key, trim(t.substr(eq + 1))));
    }
    return out;
}

std::vector<std::pair<std::string, json>> read_json(const std::string& text) {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded()) throw ConfigError("config: malformed JSON");
    if (!doc.is_object()) throw ConfigError("config: JSON document must be an object");
    std::vector<std::pair<std::string, json>> out;
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        lookup_key(it.key());
        out.emplace_back(it.key(), it.value());
    }
    return out;
}

bool looks_like_json(const std::string& text) {
    const auto b = text.find_first_not_of(" \t\r\n");
    return b != std::string::npos && text[b] == '{';
}

ScenarioConfig resolve(const std::vector<std::pair<std::string, json>>& entries) {
    ScenarioConfig cfg;
    bool has_scenario = false;
    for (const auto& [key, value] : entries) {
        lookup_key(key).set(cfg, value);
        if (key == "scenario") has_scenario = true;
    }
    if (!has_scenario) throw ConfigError("scenario required");
    validate_config(cfg);
    return cfg;
}

} // namespace

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k;
        for (const auto& [name, _] : key_table()) k.push_back(name);
        return k;
    }();
    return keys;
}

ScenarioConfig parse_config(const std::string& text) {
    return resolve(looks_like_json(text) ? read_json(text) : read_kv(text));
}

ScenarioConfig parse_config(const std::string& json_text, const std::string& kv_text) {
    auto entries = read_kv(kv_text);
    if (!trim(json_text).empty()) {
        auto j = read_json(json_text);
        entries.insert(entries.end(), j.begin(), j.end());
    }
    return resolve(entries);
}

ScenarioConfig parse_config(const std::string& text, const std::vector<std::pair<std::string, std::string>>& overrides) {
    auto entries = looks_like_json(text) ? read_json(text) : read_kv(text);
    for (const auto& [key, value] : overrides) entries.emplace_back(key, kv_value(key, value));
    return resolve(entries);
}

void apply_override(ScenarioConfig& cfg, const std::string& key, const std::string& value) {
    lookup_key(key).set(cfg, kv_value(key, value));
}

std::string serialize_config(const ScenarioConfig& cfg) {
    std::string out;
    for (const auto& [name, key] : key_table()) out += name + "=" + key.get(cfg) + "\n";
    return out;
}

namespace {
bool harmonic(Scenario s) { return s != Scenario::free_particle; }
} // namespace

void validate_config(const ScenarioConfig& cfg) {
    if (cfg.dim < 2) throw ConfigError("dim: fock invariant violated: dim must be >= 2");
    try {
        cfg.params.validate(false);
    } catch (const DomainError& e) {
        throw ConfigError(std::string("params: ") + e.what());
    }
    if (!(cfg.coupling_scale >= 0.0)) throw ConfigError("coupling_scale: must be >= 0");
    if (cfg.lambda_cut && !(*cfg.lambda_cut > 2.0 + 1e-9)) throw ConfigError("lambda_cut: must be > 2");
    if (cfg.gamma_bar && !(*cfg.gamma_bar >= 0.0)) throw ConfigError("gamma_bar: must be >= 0");
    if (harmonic(cfg.scenario) && !cfg.lambda_cut) {
        if (!(cfg.params.omega > 0.0)) throw ConfigError("omega: must be > 0 for harmonic scenarios");
        if (!(cfg.params.omega_max > 2.0 * cfg.params.omega)) throw ConfigError("omega_max: must exceed 2*omega");
    }
    if (harmonic(cfg.scenario) && !cfg.gamma_bar && !(cfg.params.omega > 0.0))
        throw ConfigError("omega: must be > 0 when gamma_bar is not given");
    if (cfg.initial_state != "thermal" && cfg.initial_state != "fock" && cfg.initial_state != "superposition")
        throw ConfigError("initial_state: expected thermal, fock or superposition");
    if (!(cfg.beta_bar > 0.0)) throw ConfigError("beta_bar: must be > 0");
    if (cfg.fock_n < 0 || cfg.fock_n >= cfg.dim) throw ConfigError("fock_n: outside the truncation");
    if (cfg.initial_state == "superposition") {
        if (cfg.superposition.empty()) throw ConfigError("superposition: empty amplitude list");
        for (const auto& a : cfg.superposition)
            if (a.n < 0 || a.n >= cfg.dim) throw ConfigError("superposition: level outside the truncation");
    }
    if (!(cfg.t_final > 0.0)) throw ConfigError("t_final: must be > 0");
    if (!(cfg.dt >= 0.0)) throw ConfigError("dt: must be >= 0");
    if (!(cfg.tolerance >= 0.0)) throw ConfigError("tolerance: must be >= 0");
    if (cfg.record_every < 1) throw ConfigError("record_every: must be >= 1");
    for (const auto& [a, b] : cfg.coherences)
        if (a < 0 || b < 0 || a >= cfg.dim || b >= cfg.dim) throw ConfigError("coherences: index outside the truncation");
    if (!(cfg.horizon > 0.0)) throw ConfigError("horizon: must be > 0");
    if (!(cfg.lambda_min > 2.0) || !(cfg.lambda_max > cfg.lambda_min))
        throw ConfigError("lambda_min: need 2 < lambda_min < lambda_max");
    if (cfg.lambda_points < 8) throw ConfigError("lambda_points: must be >= 8");
    if (cfg.free_variant != "x" && cfg.free_variant != "xi") throw ConfigError("free_variant: expected x or xi");
    if (!(cfg.free_delta < 1.0)) throw ConfigError("free_delta: must be < 1");
    if (!(cfg.var_q > 0.0) || !(cfg.var_p > 0.0)) throw ConfigError("var_q: variances must be > 0");
    if (!(cfg.gamma_t >= 0.0)) throw ConfigError("gamma_t: must be >= 0");
    if (cfg.n_ceiling < 0) throw ConfigError("n_ceiling: must be >= 0");
    if (!(cfg.rate >= 0.0)) throw ConfigError("rate: must be >= 0");
    if (cfg.jobs < 1) throw ConfigError("jobs: must be >= 1");
}

DimensionlessParams ScenarioConfig::dimensionless() const {
    DimensionlessParams d;
    d.coupling_scale = coupling_scale;
    d.lambda_cut = lambda_cut ? *lambda_cut : params.omega_max / params.omega;
    d.gamma_bar = gamma_bar ? *gamma_bar : coupling_scale * decay_rate_si(params) / params.omega;
    return d;
}

VacuumCoefficients ScenarioConfig::coefficients() const { return vacuum_coefficients(dimensionless(), params); }

DensityMatrix ScenarioConfig::initial_density() const {
    if (initial_state == "fock") return fock_state(fock_n, dim);
    if (initial_state == "superposition") {
        std::vector<std::pair<int, cplx>> amps;
        for (const auto& a : superposition) amps.emplace_back(a.n, cplx(a.re, a.im));
        return gravvac::superposition(amps, dim);
    }
    return thermal_state(beta_bar, dim);
}

} // namespace gravvac
