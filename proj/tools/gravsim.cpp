#include "gravvac/config.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

int main(int argc, char** argv) {
    using namespace gravvac;
    CLI::App app{"gravsim: gravitational-vacuum open-system scenarios, CSV output"};
    std::string config_path;
    bool print_config = false;
    app.add_option("--config", config_path, "Config file (JSON object or key=value lines)");
    app.add_flag("--print-config", print_config, "Print the resolved config and exit");
    std::map<std::string, std::string> flag_values;
    for (const auto& key : config_keys()) app.add_option("--" + key, flag_values[key], "Config key " + key);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : exit_config;
    }

    std::string text;
    if (!config_path.empty()) {
        std::ifstream f(config_path, std::ios::binary);
        if (!f) {
            std::cerr << "error code=2 kind=config message=config: cannot read " << config_path << '\n';
            return exit_config;
        }
        std::ostringstream ss;
        ss << f.rdbuf();
        text = ss.str();
    }
    std::vector<std::pair<std::string, std::string>> overrides;
    for (const auto& key : config_keys())
        if (app.count("--" + key) > 0) overrides.emplace_back(key, flag_values[key]);

    ScenarioConfig cfg;
    try {
        cfg = parse_config(text, overrides);
    } catch (const std::exception& e) {
        std::cerr << "error code=2 kind=config message=" << e.what() << '\n';
        return exit_config;
    }
    if (print_config) {
        std::cout << serialize_config(cfg);
        return exit_ok;
    }
    return run(cfg, std::cout, std::cerr);
}
