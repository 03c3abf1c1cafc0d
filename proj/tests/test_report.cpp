#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "laxgrid/acceptance.hpp"
#include "laxgrid/report.hpp"

using namespace laxgrid;
namespace fs = std::filesystem;

namespace {

ErrorKind config_kind(const std::string& text) {
    try {
        run_experiment(parse_config(text));
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "accepted: " << text;
    return ErrorKind::IoError;
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("laxgrid_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
                ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::size_t csv_count() const {
        std::size_t n = 0;
        for (auto& e : fs::directory_iterator(path)) n += e.path().extension() == ".csv";
        return n;
    }
};

} // namespace

TEST(Report, IdentitySpeedIsZero) {
    auto r = run_experiment(parse_config("map = identity\norders = 1,2\nanalyses = speed\n"));
    ASSERT_EQ(r["orders"].size(), 2u);
    for (auto& o : r["orders"]) {
        EXPECT_EQ(o["speed"]["delta_sum"].get<double>(), 0.0);
        EXPECT_TRUE(o["speed"]["pass"].get<bool>());
    }
    EXPECT_FALSE(r["orders"][0].contains("spectral"));
}

TEST(Report, TorusLinearCyclicSpectrum) {
    auto r = run_experiment(
        parse_config("map = torus_linear:2,1,1,1\norders = 1..4\nmode = cyclic\nanalyses = speed,spectral\n"));
    ASSERT_EQ(r["orders"].size(), 4u);
    for (auto& o : r["orders"]) {
        const auto q = o["q"].get<std::int64_t>();
        EXPECT_EQ(o["lax"]["cycle_count"].get<int>(), 1);
        auto& atoms = o["spectral"]["atoms"];
        ASSERT_EQ(static_cast<std::int64_t>(atoms.size()), q);
        for (std::size_t j = 0; j < atoms.size(); ++j)
            EXPECT_EQ(Rational(atoms[j]["num"].get<std::int64_t>(), atoms[j]["den"].get<std::int64_t>()),
                      Rational(static_cast<std::int64_t>(j), q));
        EXPECT_NEAR(o["spectral"]["total_mass"].get<double>(), 1.0, 1e-12);
    }
}

TEST(Report, TimingComesLastAndIsExcludedFromFingerprint) {
    auto cfg = parse_config("map = cat\norders = 1,2\nanalyses = speed,towers,cesaro\nseed = 5\n");
    auto a = run_experiment(cfg), b = run_experiment(cfg);
    EXPECT_EQ(std::prev(a.end()).key(), "timing");
    EXPECT_EQ(report_fingerprint(a), report_fingerprint(b));
    EXPECT_EQ(report_fingerprint(a).find("timing"), std::string::npos);
    cfg.seed = 6;
    // cesaro sets are drawn from the seed
    EXPECT_NE(report_fingerprint(run_experiment(cfg)), report_fingerprint(a));
}

TEST(Report, SkippedAnalysesAreRecorded) {
    // order 0 has one cell: no tower of height 2 fits
    auto r = run_experiment(parse_config("map = identity\norders = 0\nanalyses = towers\ntower_height = 2\n"));
    EXPECT_EQ(r["orders"][0]["towers"]["rokhlin"]["skipped"].get<std::string>(), "CycleTooShort");
}

TEST(Config, ParsesKeysAndComments) {
    auto c = parse_config("# comment\nmap = cat \n orders = 2..4\nmode = bicyclic\nsampling = 4\nseed = 9\n\n");
    EXPECT_EQ(c.map, "cat");
    EXPECT_EQ(c.orders, (std::vector<int>{2, 3, 4}));
    EXPECT_EQ(c.mode, LaxMode::bicyclic);
    EXPECT_EQ(c.sampling, 4);
    EXPECT_EQ(c.seed, 9u);
}

TEST(Config, Errors) {
    for (const char* bad : {"nonsense = 1\n", "orders = 3,1\n", "orders = \n", "mode = wobbly\n", "sampling = 0\n",
                            "sampling = 65\n", "refine = 0\n", "analyses = speed,speed\n", "analyses = colour\n",
                            "map = translation:x\n", "theta = inv_q:-2\n", "entropy_l = 9\n", "just a line\n",
                            "seed = -1\n", "overlap = approximate\n"})
        EXPECT_EQ(config_kind(bad), ErrorKind::ConfigError) << bad;
}

TEST(Config, MissingFileIsConfigError) {
    try {
        load_config("/nonexistent/laxgrid.cfg");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::ConfigError);
    }
}

TEST(PlotData, OneCsvPerAnalysis) {
    struct Case {
        const char* analyses;
        std::size_t files;
    };
    for (auto c : {Case{"speed", 1}, Case{"speed,towers,rank_one,entropy,spectral,cesaro", 6}, Case{"", 0}}) {
        TempDir dir;
        auto r = run_experiment(parse_config(std::string("map = cat\norders = 1,2\nmode = cyclic\nentropy_l = 2\n") +
                                             "analyses = " + c.analyses + "\n"));
        auto files = write_report(r, (dir.path / "report.json").string());
        EXPECT_EQ(files.size(), c.files + 1) << c.analyses;
        EXPECT_EQ(dir.csv_count(), c.files) << c.analyses;
        EXPECT_TRUE(fs::exists(dir.path / "report.json"));
    }
}

TEST(PlotData, SpeedCsvRows) {
    TempDir dir;
    auto r = run_experiment(parse_config("map = identity\norders = 1..3\nanalyses = speed\n"));
    emit_plot_data(r, dir.path.string());
    std::ifstream in(dir.path / "speed.csv");
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "order,q,delta_sum,theta,pass");
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        EXPECT_EQ(line.rfind(std::to_string(rows) + ",", 0), 0u) << line;
        EXPECT_EQ(line.back(), '1');
    }
    EXPECT_EQ(rows, 3);
}

TEST(Acceptance, SuitesAreRegistered) {
    auto& s = acceptance::suites();
    EXPECT_EQ(s.size(), 10u);
    acceptance::CriterionResult r{3, "x", true, "ok", 0.5, 10.0};
    EXPECT_EQ(acceptance::format_line(r).rfind("PASS  criterion 3 x: ok", 0), 0u);
}
