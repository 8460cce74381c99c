#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "tcfbm/cli/cli.hpp"
#include "tcfbm/cli/grid_spec.hpp"
#include "tcfbm/error.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using tcfbm::cli::run;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch_dir() {
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() / ("tcfbm_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::stringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST_CASE("grid specs") {
    const auto lin = tcfbm::cli::parse_grid_spec("lin:0:1:3");
    CHECK(lin.vector() == std::vector<double>{0.0, 0.5, 1.0});
    const auto log = tcfbm::cli::parse_grid_spec("log:10:1000:3");
    CHECK(log[1] == doctest::Approx(100.0));
    CHECK(log.back() == 1000.0);
    for (const char* bad : {"lin:1:0:3", "log:0:1:3", "lin:0:1:1", "cubic:0:1:3", "lin:0:1", "lin:a:1:3", "lin:-1:1:3"}) {
        CHECK_THROWS_AS(tcfbm::cli::parse_grid_spec(bad), tcfbm::ParameterError);
    }
}

TEST_CASE("simulate") {
    const auto r = invoke({"simulate", "--alpha", "1", "--a", "1", "--b", "0", "--h1", "0.5", "--h2", "0.7", "--grid",
                           "lin:0:1:3", "--paths", "1", "--seed", "7"});
    REQUIRE(r.code == 0);
    const auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] == std::vector<std::string>{"path_id", "t", "value"});
    CHECK(rows[1][0] == "0");
    CHECK(std::stod(rows[1][2]) == 0.0);

    const auto file = scratch_dir() / "sim.csv";
    const std::vector<std::string> args{"simulate", "--alpha", "0.5", "--grid", "lin:0:2:9", "--paths", "4", "--seed",
                                        "7", "--out", file.string()};
    REQUIRE(invoke(args).code == 0);
    const std::string first = read_file(file);
    REQUIRE(invoke(args).code == 0);
    CHECK(read_file(file) == first);
    CHECK(csv_rows(first).size() == 1 + 4 * 9);

    auto threaded = args;
    threaded.insert(threaded.end(), {"--threads", "3"});
    REQUIRE(invoke(threaded).code == 0);
    CHECK(read_file(file) == first);

    const auto js = invoke({"simulate", "--grid", "lin:0:1:3", "--paths", "2", "--format", "json"});
    REQUIRE(js.code == 0);
    const auto doc = json::parse(js.out);
    CHECK(doc["schema_version"] == 1);
    CHECK(doc["paths"].size() == 2);
    CHECK(doc["t"].size() == 3);
}

TEST_CASE("exit codes") {
    CHECK(invoke({"simulate", "--a", "0", "--b", "0"}).code == 2);
    CHECK(invoke({"simulate", "--alpha", "1.5"}).code == 2);
    CHECK(invoke({"simulate", "--h1", "1"}).code == 2);
    CHECK(invoke({"simulate", "--grid", "lin:1:0:3"}).code == 2);
    CHECK(invoke({"simulate", "--bogus"}).code == 2);
    CHECK(invoke({}).code == 2);
    CHECK(invoke({"price", "--s0", "0"}).code == 2);
    CHECK(invoke({"price", "--s0", "-1"}).code == 2);
    CHECK(invoke({"theory", "--h1", "0"}).code == 2);
    CHECK(invoke({"verify", "nonsense"}).code == 2);
    CHECK(invoke({"lrd-scan", "--s", "0"}).code == 2);
    CHECK(invoke({"simulate", "--delta-r", "1e-9", "--alpha", "0.5", "--grid", "lin:0:100:3"}).code == 2);

    const auto missing_dir = (scratch_dir() / "no" / "such" / "dir" / "x.csv").string();
    CHECK(invoke({"simulate", "--out", missing_dir}).code == 3);
    CHECK(invoke({"price", "--out", missing_dir}).code == 3);
    CHECK(invoke({"verify", "laplace", "--paths", "1000", "--out", missing_dir}).code == 3);
    CHECK(invoke({"lrd-scan", "--replay", (scratch_dir() / "missing.csv").string()}).code == 3);
    CHECK(invoke({"simulate", "--config", (scratch_dir() / "missing.json").string()}).code == 3);

    CHECK(invoke({"--help"}).code == 0);
    const auto err = invoke({"simulate", "--a", "0", "--b", "0"});
    CHECK(err.err.find("error") != std::string::npos);
}

TEST_CASE("oracle failure exits with 1") {
    // too coarse a clock biases T_1 upward by about delta_r / 2
    const auto r = invoke({"verify", "moments", "--alpha", "0.5", "--t", "1", "--orders", "1", "--paths", "20000",
                           "--delta-r", "0.2", "--seed", "3"});
    CHECK(r.code == 1);
    CHECK(json::parse(r.out)["oracles_pass"] == false);
}

TEST_CASE("theory") {
    const auto lrd = json::parse(invoke({"theory", "--alpha", "0.9", "--h1", "0.4", "--h2", "0.6"}).out);
    CHECK(lrd["lrd"]["holds"] == true);
    for (const char* key : {"schema_version", "variance", "covariance_q1", "asymptotic_q33", "correlation_qq13_terms",
                            "lrd", "alpha1_limits", "correlation"}) {
        CHECK_MESSAGE(lrd.contains(key), key);
    }
    for (const char* key : {"holds", "h_condition", "exponent_condition", "dominant_decay_exponent"}) {
        CHECK_MESSAGE(lrd["lrd"].contains(key), key);
    }
    CHECK(lrd["variance"].contains("paper"));
    CHECK(lrd["variance"].contains("oracle"));

    const auto bm = invoke({"theory", "--alpha", "1", "--a", "1", "--b", "0", "--h1", "0.5", "--s", "1", "--t", "2"});
    REQUIRE(bm.code == 0);
    const auto doc = json::parse(bm.out);
    CHECK(doc["covariance_q1"]["paper"].get<double>() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(doc["covariance_q1"]["tc_bm_oracle"].get<double>() == doctest::Approx(1.0).epsilon(1e-14));

    const auto swapped = json::parse(invoke({"theory", "--h1", "0.7", "--h2", "0.3"}).out);
    CHECK(swapped["lrd"]["holds"] == false);

    const auto h07 = json::parse(invoke({"theory", "--alpha", "0.5", "--a", "1", "--b", "0", "--h1", "0.7", "--t", "1"}).out);
    CHECK(h07["variance"]["paper"].get<double>() == doctest::Approx(1.1842327928157397).epsilon(1e-12));
    CHECK(h07["variance"]["oracle"].get<double>() == doctest::Approx(1.3670662493152458).epsilon(1e-12));
}

TEST_CASE("price") {
    const auto flat = invoke({"price", "--s0", "100", "--mu", "0", "--sigma", "0", "--paths", "3"});
    REQUIRE(flat.code == 0);
    const auto rows = csv_rows(flat.out);
    CHECK(rows[0] == std::vector<std::string>{"path_id", "t", "value"});
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(std::stod(rows[i][2]) == 100.0);
    }

    const auto growth =
        invoke({"price", "--s0", "100", "--sigma", "0", "--mu", "0.1", "--alpha", "1", "--grid", "lin:0:1:2", "--paths", "1"});
    const auto g = csv_rows(growth.out);
    REQUIRE(g.size() == 3);
    CHECK(std::stod(g[2][2]) == doctest::Approx(100.0 * std::exp(0.1)).epsilon(1e-14));

    const std::vector<std::string> args{"price", "--s0", "100", "--alpha", "0.8", "--h1", "0.5", "--h2", "0.7", "--a", "1",
                                        "--b", "1", "--sigma", "0.2", "--mu", "0.05", "--paths", "3", "--seed", "5"};
    const auto p1 = invoke(args);
    const auto p2 = invoke(args);
    CHECK(p1.out == p2.out);
    const auto pr = csv_rows(p1.out);
    CHECK(pr.size() == 1 + 3 * 11);
    for (std::size_t i = 1; i < pr.size(); ++i) {
        CHECK(std::stod(pr[i][2]) > 0.0);
    }
}

TEST_CASE("verify") {
    const auto lap = invoke({"verify", "laplace", "--alpha", "0.7", "--paths", "200000", "--seed", "1"});
    CHECK(lap.code == 0);
    const auto ldoc = json::parse(lap.out);
    CHECK(ldoc["reports"].size() == 3);
    for (const auto& rep : ldoc["reports"]) {
        CHECK(std::abs(rep["candidates"][0]["z_score"].get<double>()) <= 4.0);
    }

    const auto mom = invoke({"verify", "moments", "--alpha", "0.5", "--t", "1", "--orders", "1,2", "--paths", "20000",
                             "--delta-r", "1e-3"});
    CHECK(mom.code == 0);
    const auto mdoc = json::parse(mom.out);
    REQUIRE(mdoc["reports"].size() == 2);
    CHECK(mdoc["reports"][0]["candidates"][0]["value"].get<double>() == doctest::Approx(1.1283791670955126));
    CHECK(mdoc["reports"][1]["candidates"][0]["value"].get<double>() == doctest::Approx(2.0));
}

TEST_CASE("config file with flag override") {
    const auto cfg = scratch_dir() / "cfg.json";
    std::ofstream(cfg) << R"({"alpha": 1, "a": 1, "b": 0, "h1": 0.5, "grid": "lin:0:1:3", "paths": 2, "seed": 7, "delta_r": 0.01})";
    const auto from_file = invoke({"simulate", "--config", cfg.string()});
    const auto explicit_flags = invoke({"simulate", "--alpha", "1", "--a", "1", "--b", "0", "--h1", "0.5", "--grid",
                                        "lin:0:1:3", "--paths", "2", "--seed", "7", "--delta-r", "0.01"});
    REQUIRE(from_file.code == 0);
    CHECK(from_file.out == explicit_flags.out);

    const auto overridden = invoke({"simulate", "--config", cfg.string(), "--paths", "1"});
    CHECK(csv_rows(overridden.out).size() == 1 + 3);

    const auto theory_cfg = scratch_dir() / "theory.json";
    std::ofstream(theory_cfg) << R"({"h1": 0.7, "h2": 0.3})";
    CHECK(json::parse(invoke({"theory", "--config", theory_cfg.string()}).out)["lrd"]["holds"] == false);
    CHECK(json::parse(invoke({"theory", "--config", theory_cfg.string(), "--h1", "0.4", "--h2", "0.6", "--alpha", "0.9"})
                          .out)["lrd"]["holds"] == true);

    const auto broken = scratch_dir() / "broken.json";
    std::ofstream(broken) << "{not json";
    CHECK(invoke({"simulate", "--config", broken.string()}).code == 2);
}

TEST_CASE("lrd-scan writes a CSV that replays to the same fit") {
    const auto csv = scratch_dir() / "scan.csv";
    const auto r = invoke({"lrd-scan", "--alpha", "1", "--a", "0", "--b", "1", "--h2", "0.7", "--s", "1", "--grid",
                           "log:2:50:8", "--paths", "2000", "--delta-r", "0.01", "--out", csv.string()});
    REQUIRE(r.code == 0);
    const auto doc = json::parse(r.out);
    CHECK(doc["theory_d"].get<double>() == doctest::Approx(0.3));
    CHECK(doc["schema_version"] == 1);
    const auto rows = csv_rows(read_file(csv));
    REQUIRE(rows.size() == 9);
    CHECK(rows[0] == std::vector<std::string>{"t", "corr", "stderr"});

    const auto replay = invoke({"lrd-scan", "--alpha", "1", "--a", "0", "--b", "1", "--h2", "0.7", "--s", "1", "--replay",
                                csv.string()});
    REQUIRE(replay.code == 0);
    const auto rdoc = json::parse(replay.out);
    CHECK(std::abs(rdoc["fitted_d"].get<double>() - doc["fitted_d"].get<double>()) <= 1e-12);
    CHECK(std::abs(rdoc["prefactor_c"].get<double>() - doc["prefactor_c"].get<double>()) <= 1e-12);

    // exact power law through replay
    const auto synthetic = scratch_dir() / "power.csv";
    {
        std::ofstream out(synthetic);
        out << "t,corr,stderr\n";
        for (int k = 0; k <= 20; ++k) {
            const double t = 10.0 * std::pow(100.0, k / 20.0);
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,0.01\n", t, 0.9 * std::pow(t, -0.37));
            out << buf;
        }
    }
    const auto fit = json::parse(invoke({"lrd-scan", "--a", "0", "--b", "1", "--replay", synthetic.string()}).out);
    CHECK(fit["fitted_d"].get<double>() == doctest::Approx(0.37).epsilon(1e-9));

    const auto bad = scratch_dir() / "bad.csv";
    std::ofstream(bad) << "x,y\n1,2\n";
    CHECK(invoke({"lrd-scan", "--replay", bad.string()}).code == 2);
}
