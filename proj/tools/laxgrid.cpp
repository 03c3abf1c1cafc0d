#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "laxgrid/acceptance.hpp"
#include "laxgrid/laxgrid.hpp"

namespace {

int report_error(std::string_view name, const std::string& message, int code) {
    nlohmann::ordered_json j;
    j["error"] = name;
    j["message"] = message;
    std::cout << j.dump() << '\n';
    return code;
}

int run_command(const std::string& config_path, const std::optional<std::string>& map,
                const std::optional<std::string>& orders, const std::optional<std::string>& mode,
                const std::optional<std::string>& out) {
    laxgrid::ExperimentConfig cfg;
    if (!config_path.empty()) cfg = laxgrid::load_config(config_path);
    if (map) laxgrid::set_config_value(cfg, "map", *map);
    if (orders) laxgrid::set_config_value(cfg, "orders", *orders);
    if (mode) laxgrid::set_config_value(cfg, "mode", *mode);
    if (out) laxgrid::set_config_value(cfg, "output", *out);
    auto report = laxgrid::run_experiment(cfg);
    if (cfg.output.empty()) {
        std::cout << report.dump(2) << '\n';
        return 0;
    }
    for (auto& f : laxgrid::write_report(report, cfg.output)) std::cout << "wrote " << f << '\n';
    return 0;
}

int oracle_command(const std::string& suite) {
    using namespace laxgrid::acceptance;
    bool found = false, all_pass = true;
    for (auto& s : suites()) {
        if (suite != "all" && suite != s.key) continue;
        found = true;
        auto r = s.run();
        all_pass = all_pass && r.pass;
        std::cout << format_line(r) << std::endl;
    }
    if (!found) return report_error("ConfigError", "unknown oracle suite '" + suite + "'", 2);
    return all_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dyadic permutation approximation of measure-preserving maps"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "Run an experiment config");
    std::string config_path;
    std::optional<std::string> map, orders, mode, out;
    run->add_option("--config", config_path, "Config file (key = value lines)");
    run->add_option("--map", map, "Map specification, e.g. cat or translation:0.5,0.25");
    run->add_option("--orders", orders, "Orders, e.g. 1,2,3 or 1..4");
    run->add_option("--mode", mode, "plain, cyclic or bicyclic");
    run->add_option("--out", out, "Report path; CSVs go next to it");

    auto* oracle = app.add_subcommand("oracle", "Run a brute-force oracle suite");
    std::string suite = "all";
    oracle->add_option("suite", suite, "Suite name or 'all'");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return report_error("ConfigError", e.what(), 2);
    }

    try {
        if (*run) return run_command(config_path, map, orders, mode, out);
        return oracle_command(suite);
    } catch (const laxgrid::Error& e) {
        return report_error(e.name(), e.what(), e.kind() == laxgrid::ErrorKind::ConfigError ? 2 : 1);
    } catch (const std::exception& e) {
        return report_error("InternalError", e.what(), 1);
    }
}
