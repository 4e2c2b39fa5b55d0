#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "qbm/commands.hpp"
#include "qbm/errors.hpp"

using namespace qbm;
using namespace qbm::cli;
namespace fs = std::filesystem;

namespace {

struct Table {
    std::string header;
    std::vector<std::vector<double>> rows;
};

Table parse_csv(const std::string& text) {
    std::istringstream is(text);
    Table t;
    std::getline(is, t.header);
    std::string line;
    while (std::getline(is, line)) t.rows.push_back(parse_tau_list(line));
    return t;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag)
        : path(fs::temp_directory_path() / ("qbm_test_cli_" + tag)) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

RunConfig coherent_n3() {
    RunConfig cfg;
    cfg.state.kind = StateKind::coherent;
    cfg.state.alpha_re = std::sqrt(3.0);
    return cfg;
}

// Half width at half maximum along the central row (x) or column (y) of a grid with an odd
// point count centred on the origin.
double half_width(const WignerGrid& g, bool along_x) {
    const std::size_t n = along_x ? g.spec.nx : g.spec.ny;
    const std::size_t c = n / 2;
    const double peak = g.at(g.spec.nx / 2, g.spec.ny / 2);
    for (std::size_t k = c; k + 1 < n; ++k) {
        const double v0 = along_x ? g.at(k, g.spec.ny / 2) : g.at(g.spec.nx / 2, k);
        const double v1 = along_x ? g.at(k + 1, g.spec.ny / 2) : g.at(g.spec.nx / 2, k + 1);
        if (v0 >= peak / 2 && v1 < peak / 2) {
            const double a0 = along_x ? g.spec.x(k) : g.spec.y(k);
            const double a1 = along_x ? g.spec.x(k + 1) : g.spec.y(k + 1);
            return a0 + (a1 - a0) * (v0 - peak / 2) / (v0 - v1);
        }
    }
    FAIL("no half-maximum crossing");
    return 0.0;
}

}  // namespace

TEST_CASE("coeffs: default run starts at zero and shows negative Delta + gamma") {
    RunConfig cfg;
    std::ostringstream os;
    CHECK(cmd_coeffs(cfg, os).empty());
    const auto t = parse_csv(os.str());
    CHECK(t.header == "tau,delta,gamma,big_gamma,delta_gamma");
    REQUIRE(t.rows.size() == 2001);
    CHECK(os.str().find("\n0,0,0,0,0\n") != std::string::npos);
    CHECK(t.rows.back()[0] == 1.0);
    bool negative = false;
    for (const auto& row : t.rows) negative = negative || row[1] + row[2] < 0.0;
    CHECK(negative);
}

TEST_CASE("coeffs: zero coupling gives zero columns") {
    RunConfig cfg;
    cfg.params.g = 0.0;
    cfg.n_steps = 11;
    std::ostringstream os;
    cmd_coeffs(cfg, os);
    for (const auto& row : parse_csv(os.str()).rows)
        for (std::size_t c = 1; c < row.size(); ++c) CHECK(row[c] == 0.0);
}

TEST_CASE("coeffs: JSON output") {
    RunConfig cfg;
    cfg.n_steps = 5;
    cfg.format = OutputFormat::json;
    std::ostringstream os;
    cmd_coeffs(cfg, os);
    const auto doc = nlohmann::json::parse(os.str());
    CHECK(doc["rows"].size() == 5);
    CHECK(doc["columns"][4] == "delta_gamma");
    CHECK(doc["config"]["g"] == 0.1);
}

TEST_CASE("moments: coherent <n> = 3 oscillates with period 2 pi r") {
    TempDir dir("period");
    RunConfig cfg = coherent_n3();
    cfg.out = (dir.path / "coherent.csv").string();
    const auto written = cmd_moments(cfg, std::cout);
    REQUIRE(written.size() == 2);
    const auto t = parse_csv(slurp(written[0]));
    CHECK(t.header == "tau,n_mean,var_x,var_y,cov_xy,mean_x,mean_y");
    CHECK(t.rows.front()[1] == doctest::Approx(3.0).epsilon(1e-14));
    const auto summary = nlohmann::json::parse(slurp(written[1]));
    REQUIRE(summary["oscillation_period"].is_number());
    const double period = summary["oscillation_period"].get<double>();
    CHECK(std::abs(period - 2 * std::numbers::pi * 0.05) < 0.02 * 2 * std::numbers::pi * 0.05);
    CHECK(summary["version"] == "qbm 1.0.0");
    CHECK(summary["frame"] == "rotating");
}

TEST_CASE("moments: squeezed default starts at var_x = 0.05") {
    RunConfig cfg;
    cfg.n_steps = 301;
    std::ostringstream os;
    cmd_moments(cfg, os);
    const auto t = parse_csv(os.str());
    CHECK(t.rows.front()[2] == doctest::Approx(0.05).epsilon(1e-14));
    CHECK(t.rows.front()[3] == doctest::Approx(5.0).epsilon(1e-14));
}

TEST_CASE("moments: vacuum with zero coupling is constant") {
    RunConfig cfg;
    cfg.params.g = 0.0;
    cfg.state.kind = StateKind::vacuum;
    cfg.n_steps = 21;
    std::ostringstream os;
    cmd_moments(cfg, os);
    const auto t = parse_csv(os.str());
    for (const auto& row : t.rows)
        for (std::size_t c = 1; c < row.size(); ++c) CHECK(row[c] == t.rows.front()[c]);
}

TEST_CASE("moments: JSON carries rows and summary") {
    RunConfig cfg;
    cfg.n_steps = 401;
    cfg.format = OutputFormat::json;
    std::ostringstream os;
    cmd_moments(cfg, os);
    const auto doc = nlohmann::json::parse(os.str());
    CHECK(doc["rows"].size() == 401);
    CHECK(doc["squeezing_intervals_x"].is_array());
    CHECK(doc.contains("oscillation_period"));
}

TEST_CASE("wigner: grids at the default times") {
    TempDir dir("wigner");
    RunConfig cfg;
    cfg.out = (dir.path / "w").string();
    const auto files = cmd_wigner(cfg);
    REQUIRE(files.size() == 4);
    CHECK(fs::path(files[1]).filename() == "w_tau0.15.csv");

    std::vector<WignerGrid> grids;
    for (const auto& f : files) {
        std::ifstream in(f);
        grids.push_back(read_grid_csv(in));
        CHECK(grids.back().spec.nx == 401);
        CHECK(grids.back().integral() == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(grids.back().min_value() >= 0.0);
    }
    // Initial squeezing: the x section is sqrt(10) narrower than vacuum and the y section
    // sqrt(10) wider, so their ratio is 10.
    const double vacuum_hwhm = std::sqrt(2.0 * std::log(2.0) * 0.25);  // alpha units
    CHECK(vacuum_hwhm / half_width(grids[0], true) == doctest::Approx(std::sqrt(10.0)).epsilon(1e-4));
    CHECK(half_width(grids[0], false) / vacuum_hwhm == doctest::Approx(std::sqrt(10.0)).epsilon(1e-4));
    CHECK(half_width(grids[0], false) / half_width(grids[0], true) == doctest::Approx(10.0).epsilon(1e-4));

    // At tau = 0.3 the shape follows the propagated covariance: x is narrower than vacuum
    // and y is broadened.
    const auto s = to_rotating_frame(propagate(cfg.state.build(), cfg.params, 0.3), cfg.params, 0.3);
    CHECK(half_width(grids[2], false) / half_width(grids[2], true) ==
          doctest::Approx(std::sqrt(s.cov.yy / s.cov.xx)).epsilon(1e-4));
    const auto m = grids[2].moments();
    CHECK(m.cov.xx == doctest::Approx(s.cov.xx).epsilon(1e-6));
}

TEST_CASE("wigner: CSV round trip and JSON layout") {
    TempDir dir("roundtrip");
    RunConfig cfg;
    cfg.taus = {0.2};
    cfg.nx = 15;
    cfg.ny = 9;
    cfg.extents = GridExtents{-2.0, 2.0, -3.0, 3.0};
    cfg.out = (dir.path / "g").string();
    const auto csv_file = cmd_wigner(cfg).at(0);
    std::ifstream in(csv_file);
    const auto grid = read_grid_csv(in);
    CHECK(slurp(csv_file).rfind("# -2,2,-3,3,15,9\n", 0) == 0);
    std::ostringstream again;
    write_grid_csv(grid, again);
    CHECK(again.str() == slurp(csv_file));

    cfg.format = OutputFormat::json;
    const auto json_file = cmd_wigner(cfg).at(0);
    const auto doc = nlohmann::json::parse(slurp(json_file));
    CHECK(doc["nx"] == 15);
    CHECK(doc["values"].size() == 9);
    CHECK(doc["values"][0].size() == 15);
    CHECK(doc["values"][4][7].get<double>() == grid.at(7, 4));

    std::istringstream bad("x\n");
    CHECK_THROWS_AS(read_grid_csv(bad), DomainError);
}

TEST_CASE("classify: defaults are non-Lindblad, zero coupling is Lindblad") {
    RunConfig cfg;
    std::ostringstream os;
    cmd_classify(cfg, os);
    const auto doc = nlohmann::json::parse(os.str());
    CHECK(doc["is_lindblad_type"] == false);
    CHECK(doc["delta_plus_gamma_negative"].size() + doc["delta_minus_gamma_negative"].size() > 0);

    cfg.params.g = 0.0;
    std::ostringstream os0;
    cmd_classify(cfg, os0);
    CHECK(nlohmann::json::parse(os0.str())["is_lindblad_type"] == true);
}

TEST_CASE("determinism: identical configs give identical bytes") {
    TempDir dir("determinism");
    RunConfig cfg = coherent_n3();
    cfg.out = (dir.path / "m.csv").string();
    cmd_moments(cfg, std::cout);
    const auto first = slurp(cfg.out);
    const auto first_summary = slurp(cfg.out + ".summary.json");
    cmd_moments(cfg, std::cout);
    CHECK(slurp(cfg.out) == first);
    CHECK(slurp(cfg.out + ".summary.json") == first_summary);

    std::ostringstream a, b;
    cmd_coeffs(RunConfig{}, a);
    cmd_coeffs(RunConfig{}, b);
    CHECK(a.str() == b.str());
}

TEST_CASE("config: JSON round trip") {
    RunConfig cfg;
    cfg.params = PhysicalParams{0.2, 0.3, 17.5};
    cfg.state = InitialStateSpec{StateKind::coherent, 0.1, -0.3, 0.25, 0.7};
    cfg.tau_max = 2.5;
    cfg.n_steps = 77;
    cfg.taus = {0.0, 0.1, 1.0 / 3.0};
    cfg.extents = GridExtents{-1.0, 1.5, -2.0, 2.5};
    cfg.nx = 31;
    cfg.ny = 41;
    cfg.out = "run";
    cfg.format = OutputFormat::json;
    cfg.tol = 1e-9;
    cfg.frame = Frame::lab;
    cfg.dynamics = Dynamics::markovian;
    cfg.classify_samples = 123;

    const auto j = to_json(cfg);
    const auto back = from_json(nlohmann::json::parse(j.dump()));
    CHECK(to_json(back) == j);
    CHECK(back.taus[2] == cfg.taus[2]);
    CHECK(back.extents->y_max == 2.5);
}

TEST_CASE("config: rejected inputs") {
    using nlohmann::json;
    CHECK_THROWS_AS(from_json(json{{"nope", 1}}), DomainError);
    CHECK_THROWS_AS(from_json(json{{"g", "x"}}), DomainError);
    CHECK_THROWS_AS(from_json(json{{"kt_over_wc", 1.0}, {"wc_over_2pikt", 3e-5}}), DomainError);
    CHECK_THROWS_AS(from_json(json{{"x_min", -1.0}}), DomainError);
    CHECK_THROWS_AS(from_json(json::array()), DomainError);
    CHECK_THROWS_AS(load_config_file("/nonexistent/qbm.json"), IoError);

    const auto cfg = from_json(json{{"wc_over_2pikt", 3e-5}, {"s", 0.5}});
    CHECK(cfg.params.kt_over_wc == doctest::Approx(kReferenceKtOverWc).epsilon(1e-14));
    CHECK(cfg.state.sigma2 == doctest::Approx(std::exp(-1.0)));

    RunConfig bad;
    bad.tau_max = -1.0;
    std::ostringstream os;
    CHECK_THROWS_AS(cmd_coeffs(bad, os), DomainError);
    bad = RunConfig{};
    bad.out = "/nonexistent/dir/out.csv";
    CHECK_THROWS_AS(cmd_coeffs(bad, os), IoError);
}
