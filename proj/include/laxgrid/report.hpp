#pragma once

// Experiment runner: flat key=value configs, a deterministic JSON report and
// one CSV per analysis.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "laxgrid/entropy.hpp"
#include "laxgrid/error.hpp"
#include "laxgrid/grid.hpp"
#include "laxgrid/lax.hpp"
#include "laxgrid/maps.hpp"
#include "laxgrid/metrics.hpp"
#include "laxgrid/spectral.hpp"
#include "laxgrid/towers.hpp"

namespace laxgrid {

inline constexpr const char* kToolVersion = "0.1.0";

inline const std::vector<std::string>& known_analyses() {
    static const std::vector<std::string> v{"speed", "towers", "rank_one", "entropy", "spectral", "cesaro"};
    return v;
}

struct ExperimentConfig {
    std::string map = "identity";
    int dim = 0;  // 0: taken from the map
    Topology topology = Topology::torus;
    std::vector<int> orders{1, 2};
    LaxMode mode = LaxMode::plain;
    OverlapMode overlap = OverlapMode::sampled;
    int sampling = 8;
    int refine = 3;
    std::vector<std::string> analyses{"speed"};
    std::uint64_t seed = 0;
    std::string output;
    std::string theta = "inv_q:1";
    int tower_height = 2;
    int entropy_l = 3;

    bool has(const std::string& a) const { return std::find(analyses.begin(), analyses.end(), a) != analyses.end(); }
};

namespace detail {

inline std::string trim_copy(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

inline long long config_int(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        long long x = std::stoll(v, &used);
        if (used == v.size()) return x;
    } catch (const std::exception&) {
    }
    fail(ErrorKind::ConfigError, "key '" + key + "' expects an integer, got '" + v + "'");
}

// "1,2,5" or "1..4"
inline std::vector<int> parse_orders(const std::string& v) {
    std::vector<int> out;
    auto dots = v.find("..");
    if (dots != std::string::npos) {
        long long a = config_int("orders", trim_copy(v.substr(0, dots)));
        long long b = config_int("orders", trim_copy(v.substr(dots + 2)));
        require(a <= b, ErrorKind::ConfigError, "empty order range '" + v + "'");
        for (long long m = a; m <= b; ++m) out.push_back(static_cast<int>(m));
        return out;
    }
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(static_cast<int>(config_int("orders", trim_copy(item))));
    return out;
}

inline std::vector<std::string> parse_list(const std::string& v) {
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto t = trim_copy(item);
        if (!t.empty()) out.push_back(t);
    }
    return out;
}

} // namespace detail

// One key=value assignment; CLI flag overrides go through here too.
inline void set_config_value(ExperimentConfig& c, const std::string& key_raw, const std::string& value_raw) {
    const std::string key = detail::trim_copy(key_raw), v = detail::trim_copy(value_raw);
    if (key == "map") {
        c.map = v;
    } else if (key == "dim") {
        c.dim = static_cast<int>(detail::config_int(key, v));
    } else if (key == "topology") {
        c.topology = parse_topology(v);
    } else if (key == "orders") {
        c.orders = detail::parse_orders(v);
    } else if (key == "mode") {
        try {
            c.mode = parse_lax_mode(v);
        } catch (const Error& e) {
            fail(ErrorKind::ConfigError, e.what());
        }
    } else if (key == "overlap") {
        try {
            c.overlap = parse_overlap_mode(v);
        } catch (const Error& e) {
            fail(ErrorKind::ConfigError, e.what());
        }
    } else if (key == "sampling") {
        c.sampling = static_cast<int>(detail::config_int(key, v));
    } else if (key == "refine") {
        c.refine = static_cast<int>(detail::config_int(key, v));
    } else if (key == "analyses") {
        c.analyses = detail::parse_list(v);
    } else if (key == "seed") {
        long long s = detail::config_int(key, v);
        require(s >= 0, ErrorKind::ConfigError, "seed must be >= 0");
        c.seed = static_cast<std::uint64_t>(s);
    } else if (key == "output") {
        c.output = v;
    } else if (key == "theta") {
        c.theta = v;
    } else if (key == "tower_height") {
        c.tower_height = static_cast<int>(detail::config_int(key, v));
    } else if (key == "entropy_l") {
        c.entropy_l = static_cast<int>(detail::config_int(key, v));
    } else {
        fail(ErrorKind::ConfigError, "unknown config key '" + key + "'");
    }
}

inline void validate_config(const ExperimentConfig& c) {
    require(!c.orders.empty(), ErrorKind::ConfigError, "orders must not be empty");
    for (std::size_t i = 0; i < c.orders.size(); ++i) {
        require(c.orders[i] >= 0, ErrorKind::ConfigError, "orders must be >= 0");
        require(i == 0 || c.orders[i] > c.orders[i - 1], ErrorKind::ConfigError, "orders must be increasing");
    }
    require(c.refine >= 1, ErrorKind::ConfigError, "refine must be >= 1");
    require(c.sampling >= 1 && c.sampling <= 64, ErrorKind::ConfigError, "sampling must be in [1,64]");
    require(c.dim >= 0 && c.dim <= kMaxDim, ErrorKind::ConfigError, "dim out of range");
    require(c.tower_height >= 1, ErrorKind::ConfigError, "tower_height must be >= 1");
    require(c.entropy_l >= 1 && c.entropy_l <= 8, ErrorKind::ConfigError, "entropy_l must be in [1,8]");
    std::set<std::string> seen;
    for (auto& a : c.analyses) {
        require(std::find(known_analyses().begin(), known_analyses().end(), a) != known_analyses().end(),
                ErrorKind::ConfigError, "unknown analysis '" + a + "'");
        require(seen.insert(a).second, ErrorKind::ConfigError, "analysis '" + a + "' listed twice");
    }
    parse_map(c.map, c.dim);
    parse_speed(c.theta);
}

// Lines of key = value; '#' starts a comment.
inline ExperimentConfig parse_config(std::string_view text) {
    ExperimentConfig c;
    std::stringstream ss{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        auto t = detail::trim_copy(line);
        if (t.empty()) continue;
        auto eq = t.find('=');
        require(eq != std::string::npos, ErrorKind::ConfigError,
                "line " + std::to_string(lineno) + ": expected key = value");
        set_config_value(c, t.substr(0, eq), t.substr(eq + 1));
    }
    return c;
}

inline ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    require(static_cast<bool>(in), ErrorKind::ConfigError, "cannot read config '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

namespace detail {

using ojson = nlohmann::ordered_json;

inline ojson rational_json(const Rational& r) { return ojson{{"num", r.num()}, {"den", r.den()}}; }

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

inline ojson skipped(const Error& e) { return ojson{{"skipped", e.name()}, {"message", e.what()}}; }

} // namespace detail

// Runs every analysis at every order. Results never depend on wall-clock;
// stage timings go in the trailing "timing" block only.
inline nlohmann::ordered_json run_experiment(const ExperimentConfig& cfg) {
    using detail::ojson;
    validate_config(cfg);
    const auto t_start = std::chrono::steady_clock::now();
    const MeasureMap f = parse_map(cfg.map, cfg.dim);
    const SpeedSpec theta = parse_speed(cfg.theta);
    std::mt19937_64 rng(cfg.seed);

    ojson report;
    report["tool"] = {{"name", "laxgrid"}, {"version", kToolVersion}};
    report["config"] = {{"map", f.describe()},
                        {"dim", f.dim()},
                        {"topology", topology_name(cfg.topology)},
                        {"orders", cfg.orders},
                        {"mode", lax_mode_name(cfg.mode)},
                        {"overlap", cfg.overlap == OverlapMode::exact ? "exact" : "sampled"},
                        {"sampling", cfg.sampling},
                        {"refine", cfg.refine},
                        {"analyses", cfg.analyses},
                        {"seed", cfg.seed},
                        {"theta", theta.describe()},
                        {"tower_height", cfg.tower_height},
                        {"entropy_l", cfg.entropy_l}};
    ojson timing = ojson::object();
    ojson per_order = ojson::array();

    for (int m : cfg.orders) {
        ojson o;
        ojson stage_time = ojson::object();
        DyadicGrid grid(f.dim(), m, cfg.topology, cfg.refine);
        o["order"] = m;
        o["q"] = grid.cell_count();

        auto t = std::chrono::steady_clock::now();
        auto lax = lax_approximate(f, grid, cfg.sampling, cfg.mode, cfg.overlap);
        stage_time["lax"] = detail::seconds_since(t);
        const auto& perm = lax.perm;
        o["lax"] = {{"mode", lax_mode_name(cfg.mode)},
                    {"cycle_count", perm.cycle_count()},
                    {"cycle_lengths", perm.cycle_lengths()},
                    {"all_matched_overlap_positive", lax.certificate.all_matched_ok()},
                    {"final_overlap_fraction", lax.certificate.final_ok_fraction()},
                    {"cell_diameter", lax.certificate.cell_diameter},
                    {"max_image_diameter", lax.certificate.max_image_diameter},
                    {"strong_bound", lax.certificate.strong_bound}};

        if (cfg.has("speed")) {
            t = std::chrono::steady_clock::now();
            auto r = approx_record(f, grid, lax, cfg.refine, theta);
            o["speed"] = {{"delta_sum", r.delta_sum},   {"d_weak", r.d_weak},       {"d_strong_bound", r.d_strong_bound},
                          {"theta", r.theta},           {"tolerance", r.tolerance}, {"pass", r.pass}};
            stage_time["speed"] = detail::seconds_since(t);
        }
        if (cfg.has("towers")) {
            t = std::chrono::steady_clock::now();
            ojson tw;
            try {
                auto tower = rokhlin_tower(perm, static_cast<std::size_t>(cfg.tower_height));
                tw["rokhlin"] = {{"height", tower.height},
                                 {"bases", tower.base.size()},
                                 {"coverage", detail::rational_json(tower.coverage())}};
            } catch (const Error& e) {
                tw["rokhlin"] = detail::skipped(e);
            }
            try {
                auto two = two_column_partition(perm, 2, 3);
                tw["two_column"] = {{"p", 2},
                                    {"q2", 3},
                                    {"bases_p", two.t1.size()},
                                    {"bases_q2", two.t2.size()},
                                    {"exact_cover", two.exact_cover(perm)}};
            } catch (const Error& e) {
                tw["two_column"] = detail::skipped(e);
            }
            o["towers"] = tw;
            stage_time["towers"] = detail::seconds_since(t);
        }
        if (cfg.has("rank_one")) {
            t = std::chrono::steady_clock::now();
            try {
                auto c = rank_one_base(f, perm, grid, cfg.refine);
                o["rank_one"] = {{"measure_A", detail::rational_json(c.measure_A)},
                                 {"measure_C", detail::rational_json(c.measure_C)},
                                 {"disjoint", c.disjointness_ok},
                                 {"return_overlap", detail::rational_json(c.return_overlap)},
                                 {"max_partition_error", detail::rational_json(c.max_partition_error)}};
            } catch (const Error& e) {
                o["rank_one"] = detail::skipped(e);
            }
            stage_time["rank_one"] = detail::seconds_since(t);
        }
        if (cfg.has("entropy")) {
            t = std::chrono::steady_clock::now();
            auto P = cell_partition(grid, cfg.refine);
            const double mu = delta_sum(f, perm, grid, cfg.refine) / 2.0;
            ojson rows = ojson::array();
            for (int l = 1; l <= cfg.entropy_l; ++l) {
                double h = entropy_rate_estimate(f, P, l);
                double hp = entropy_rate_estimate(perm, grid, P, l);
                rows.push_back({{"l", l},
                                {"H_l", h},
                                {"perm_H_l", hp},
                                {"bound", katok_stepin_gap_bound(l, mu, grid.cell_count()) / l}});
            }
            o["entropy"] = rows;
            stage_time["entropy"] = detail::seconds_since(t);
        }
        if (cfg.has("spectral")) {
            t = std::chrono::steady_clock::now();
            auto sm = spectral_type(perm);
            ojson atoms = ojson::array();
            for (auto& a : sm.atoms) atoms.push_back({{"num", a.num}, {"den", a.den}, {"weight", a.weight}});
            o["spectral"] = {{"total_mass", sm.total_mass()}, {"atoms", atoms}};
            stage_time["spectral"] = detail::seconds_since(t);
        }
        if (cfg.has("cesaro")) {
            t = std::chrono::steady_clock::now();
            std::vector<CellIndex> E1, E2;
            std::bernoulli_distribution coin(0.5);
            for (CellIndex c = 0; c < grid.cell_count(); ++c) {
                if (coin(rng)) E1.push_back(c);
                if (coin(rng)) E2.push_back(c);
            }
            const std::size_t N = grid.cell_count();
            auto d = cesaro_mixing_diagnostic(perm, E1, E2, N);
            Rational product(static_cast<std::int64_t>(E1.size() * E2.size()),
                             static_cast<std::int64_t>(N * N));
            ojson series = ojson::array();
            for (std::size_t n = 0; n < N; ++n)
                series.push_back({{"n", n + 1},
                                  {"signed_gap_average", detail::rational_json(d.signed_gap_average[n])},
                                  {"unsigned_average", detail::rational_json(d.unsigned_average[n])}});
            o["cesaro"] = {{"E1_size", E1.size()},
                           {"E2_size", E2.size()},
                           {"product", detail::rational_json(product)},
                           {"average_equals_product", d.unsigned_average.back() == product},
                           {"series", series}};
            stage_time["cesaro"] = detail::seconds_since(t);
        }
        per_order.push_back(o);
        timing["order_" + std::to_string(m)] = stage_time;
    }
    report["orders"] = per_order;
    timing["total_seconds"] = detail::seconds_since(t_start);
    report["timing"] = timing;
    return report;
}

// The report without its timing block, as compact text.
inline std::string report_fingerprint(nlohmann::ordered_json report) {
    report.erase("timing");
    return report.dump();
}

namespace detail {

inline std::string rat_text(const ojson& r) {
    return std::to_string(r["num"].get<std::int64_t>()) + "/" + std::to_string(r["den"].get<std::int64_t>());
}

inline std::string num_text(const ojson& v) {
    if (v.is_number_float()) return fmt_double(v.get<double>());
    return v.dump();
}

} // namespace detail

// One CSV per analysis present in the report, written next to `json_path`.
// Returns the files written.
inline std::vector<std::string> emit_plot_data(const nlohmann::ordered_json& report, const std::string& dir) {
    using detail::num_text;
    using detail::rat_text;
    std::vector<std::string> written;
    std::map<std::string, std::ostringstream> out;
    const auto& analyses = report["config"]["analyses"];
    auto has = [&](const char* a) { return std::find(analyses.begin(), analyses.end(), a) != analyses.end(); };
    if (has("speed")) out["speed"] << "order,q,delta_sum,theta,pass\n";
    if (has("towers")) out["towers"] << "order,height,bases,coverage,two_column_exact\n";
    if (has("rank_one")) out["rank_one"] << "order,measure_A,measure_C,return_overlap,max_partition_error\n";
    if (has("entropy")) out["entropy"] << "order,l,H_l,perm_H_l,bound\n";
    if (has("spectral")) out["spectral"] << "order,num,den,weight\n";
    if (has("cesaro")) out["cesaro"] << "order,n,signed_gap_average,unsigned_average\n";
    for (auto& o : report["orders"]) {
        const std::string m = std::to_string(o["order"].get<int>());
        if (o.contains("speed")) {
            auto& s = o["speed"];
            out["speed"] << m << ',' << o["q"].dump() << ',' << num_text(s["delta_sum"]) << ','
                         << num_text(s["theta"]) << ',' << (s["pass"].get<bool>() ? 1 : 0) << '\n';
        }
        if (o.contains("towers")) {
            auto& r = o["towers"]["rokhlin"];
            auto& two = o["towers"]["two_column"];
            out["towers"] << m << ',';
            if (r.contains("skipped"))
                out["towers"] << ",,";
            else
                out["towers"] << r["height"].dump() << ',' << r["bases"].dump() << ',' << rat_text(r["coverage"]);
            out["towers"] << ',';
            if (!two.contains("skipped")) out["towers"] << (two["exact_cover"].get<bool>() ? 1 : 0);
            out["towers"] << '\n';
        }
        if (o.contains("rank_one")) {
            auto& r = o["rank_one"];
            out["rank_one"] << m;
            if (r.contains("skipped"))
                out["rank_one"] << ",,,,\n";
            else
                out["rank_one"] << ',' << rat_text(r["measure_A"]) << ',' << rat_text(r["measure_C"]) << ','
                                << rat_text(r["return_overlap"]) << ',' << rat_text(r["max_partition_error"]) << '\n';
        }
        if (o.contains("entropy"))
            for (auto& row : o["entropy"])
                out["entropy"] << m << ',' << row["l"].dump() << ',' << num_text(row["H_l"]) << ','
                               << num_text(row["perm_H_l"]) << ',' << num_text(row["bound"]) << '\n';
        if (o.contains("spectral"))
            for (auto& a : o["spectral"]["atoms"])
                out["spectral"] << m << ',' << a["num"].dump() << ',' << a["den"].dump() << ','
                                << num_text(a["weight"]) << '\n';
        if (o.contains("cesaro"))
            for (auto& row : o["cesaro"]["series"])
                out["cesaro"] << m << ',' << row["n"].dump() << ',' << rat_text(row["signed_gap_average"]) << ','
                              << rat_text(row["unsigned_average"]) << '\n';
    }
    for (auto& [name, text] : out) {
        auto path = (std::filesystem::path(dir) / (name + ".csv")).string();
        std::ofstream f(path, std::ios::binary);
        require(static_cast<bool>(f), ErrorKind::IoError, "cannot write '" + path + "'");
        f << text.str();
        require(static_cast<bool>(f), ErrorKind::IoError, "write failed for '" + path + "'");
        written.push_back(path);
    }
    return written;
}

// JSON report at cfg.output plus the CSVs in the same directory.
inline std::vector<std::string> write_report(const nlohmann::ordered_json& report, const std::string& output) {
    namespace fs = std::filesystem;
    fs::path p(output);
    std::error_code ec;
    if (p.has_parent_path()) fs::create_directories(p.parent_path(), ec);
    require(!ec, ErrorKind::IoError, "cannot create '" + p.parent_path().string() + "'");
    {
        std::ofstream f(p, std::ios::binary);
        require(static_cast<bool>(f), ErrorKind::IoError, "cannot write '" + output + "'");
        f << report.dump(2) << '\n';
    }
    auto files = emit_plot_data(report, p.has_parent_path() ? p.parent_path().string() : ".");
    files.insert(files.begin(), output);
    return files;
}

} // namespace laxgrid
