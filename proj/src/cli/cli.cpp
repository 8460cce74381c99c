#include "tcfbm/cli/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tcfbm/cli/grid_spec.hpp"
#include "tcfbm/cli/report_json.hpp"
#include "tcfbm/error.hpp"
#include "tcfbm/montecarlo.hpp"
#include "tcfbm/subordinator.hpp"
#include "tcfbm/theory.hpp"
#include "tcfbm/timechange.hpp"

namespace tcfbm::cli {

using nlohmann::json;

namespace {

struct RunConfig {
    double alpha = 0.8;
    double a = 1.0;
    double b = 1.0;
    double h1 = 0.5;
    double h2 = 0.7;
    double s = 1.0;
    double t = 2.0;
    std::string grid = "lin:0:1:11";
    std::size_t paths = 0;  // 0: per-command default
    double delta_r = 0.0;  // 0: default_delta_r for the grid
    std::uint64_t seed = 1;
    std::string out;
    std::string format = "csv";
    double tolerance = 0.15;
    unsigned threads = 0;

    // price
    double s0 = 100.0;
    double mu = 0.0;
    double sigma = 1.0;

    // verify
    std::string mode;
    std::vector<double> u_values{0.5, 1.0, 2.0};
    std::vector<double> orders{1.0, 2.0};

    // lrd-scan
    std::string replay;

    FmfBmParams params() const { return FmfBmParams(a, b, Hurst(h1), Hurst(h2), StableIndex(alpha)); }

    double resolved_delta_r(double t_max) const {
        if (delta_r > 0.0) {
            return delta_r;
        }
        if (delta_r < 0.0) {
            throw ParameterError("--delta-r must be positive (0 selects the default)");
        }
        return default_delta_r(StableIndex(alpha), t_max > 0.0 ? t_max : 1.0);
    }

    std::size_t paths_or(std::size_t fallback) const { return paths != 0 ? paths : fallback; }

    EnsembleOptions ensemble_options() const { return EnsembleOptions{threads, kDefaultMaxGridPoints}; }
};

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

json base_document(const std::string& command) {
    return json{{"schema_version", kSchemaVersion}, {"command", command}};
}

// Writes to `path`, or to `out` when path is empty or "-".
void write_text(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw IoError("cannot open " + path + " for writing");
    }
    file << text;
    file.flush();
    if (!file) {
        throw IoError("failed writing " + path);
    }
}

std::string ensemble_csv(const Ensemble& ens) {
    std::string text = "path_id,t,value\n";
    for (std::size_t i = 0; i < ens.n_paths(); ++i) {
        for (std::size_t j = 0; j < ens.grid().size(); ++j) {
            text += std::to_string(i);
            text += ',';
            text += format_double(ens.grid()[j]);
            text += ',';
            text += format_double(ens.value(i, j));
            text += '\n';
        }
    }
    return text;
}

std::string ensemble_json(const Ensemble& ens, const std::string& command) {
    json doc = base_document(command);
    doc["t"] = ens.grid().vector();
    json paths = json::array();
    for (std::size_t i = 0; i < ens.n_paths(); ++i) {
        const auto row = ens.row(i);
        json values = json::array();
        for (double v : row) {
            values.push_back(json_number(v));
        }
        paths.push_back(values);
    }
    doc["paths"] = paths;
    return doc.dump(2) + "\n";
}

void write_ensemble(const RunConfig& cfg, const Ensemble& ens, const std::string& command, std::ostream& out) {
    if (cfg.format == "csv") {
        write_text(cfg.out, ensemble_csv(ens), out);
    } else {
        write_text(cfg.out, ensemble_json(ens, command), out);
    }
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out) {
    const FmfBmParams params = cfg.params();
    const TimeGrid grid = parse_grid_spec(cfg.grid);
    const Ensemble ens = generate_ensemble(params, grid, cfg.paths_or(10), cfg.resolved_delta_r(grid.back()), cfg.seed,
                                           cfg.ensemble_options());
    write_ensemble(cfg, ens, "simulate", out);
    return kSuccess;
}

int cmd_price(const RunConfig& cfg, std::ostream& out) {
    const PriceModelParams params(cfg.s0, cfg.mu, cfg.sigma, cfg.params());
    const TimeGrid grid = parse_grid_spec(cfg.grid);
    const Ensemble ens = generate_price_ensemble(params, grid, cfg.paths_or(10), cfg.resolved_delta_r(grid.back()), cfg.seed,
                                                 cfg.ensemble_options());
    write_ensemble(cfg, ens, "price", out);
    return kSuccess;
}

template <typename F>
json optional_value(F&& f) {
    try {
        return f();
    } catch (const DomainError& e) {
        return json{{"error", e.what()}};
    }
}

int cmd_theory(const RunConfig& cfg, std::ostream& out) {
    const FmfBmParams p = cfg.params();
    const double s = cfg.s;
    const double t = cfg.t;
    if (!(s >= 0.0) || !(t >= 0.0)) {
        throw ParameterError("--s and --t must be >= 0");
    }
    constexpr auto kPaper = FormulaVariant::Published;
    constexpr auto kOracle = FormulaVariant::MomentOracle;

    json doc = base_document("theory");
    doc["params"] = {{"alpha", cfg.alpha}, {"a", cfg.a}, {"b", cfg.b}, {"h1", cfg.h1}, {"h2", cfg.h2},
                     {"s", s},             {"t", t}};
    doc["variance"] = {{"paper", json_number(variance_tc(p, t, kPaper))},
                       {"oracle", json_number(variance_tc(p, t, kOracle))}};
    doc["covariance_q1"] = {{"paper", json_number(covariance_tc(p, s, t, kPaper))},
                            {"oracle", json_number(covariance_tc(p, s, t, kOracle))}};
    if (p.a != 0.0 && p.b == 0.0 && p.h1.value() == 0.5) {
        doc["covariance_q1"]["tc_bm_oracle"] = json_number(p.a * p.a * tc_bm_covariance_oracle(p.alpha, s, t));
    } else if (p.b != 0.0 && p.a == 0.0 && p.h2.value() == 0.5) {
        doc["covariance_q1"]["tc_bm_oracle"] = json_number(p.b * p.b * tc_bm_covariance_oracle(p.alpha, s, t));
    }
    doc["correlation"] = optional_value([&] {
        json c;
        for (auto v : {kPaper, kOracle}) {
            const CorrelationValue r = correlation(p, s, t, v);
            c[std::string(to_string(v))] = {{"value", json_number(r.value)}, {"out_of_range", r.out_of_range}};
        }
        return c;
    });
    doc["asymptotic_q33"] = optional_value([&] { return json(covariance_asymptotic(p, s, t)); });
    doc["correlation_qq13_terms"] = optional_value([&] { return json(correlation_asymptotic(p, s, t)); });
    doc["lrd"] = lrd_condition(p);
    doc["alpha1_limits"] = optional_value([&] {
        const Alpha1Limits lim = alpha1_limits(p.a, p.b, p.h1, p.h2, std::min(s, t), std::max(s, t));
        auto opt = [](const std::optional<double>& x) { return x ? json_number(*x) : json(nullptr); };
        return json{{"covariance", json_number(lim.covariance)},
                    {"asymptotic_covariance", opt(lim.asymptotic_covariance)},
                    {"published_limit_covariance", json_number(lim.published_limit_covariance)},
                    {"asymptotic_correlation", opt(lim.asymptotic_correlation)},
                    {"published_limit_correlation", opt(lim.published_limit_correlation)}};
    });
    out << doc.dump(2) << "\n";
    return kSuccess;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
    std::vector<ComparisonReport> reports;
    const auto opts = cfg.ensemble_options();
    if (cfg.mode == "laplace") {
        reports = laplace_check(StableIndex(cfg.alpha), cfg.u_values, cfg.paths_or(200000), cfg.seed);
    } else if (cfg.mode == "moments") {
        reports = compare_inverse_moments(StableIndex(cfg.alpha), cfg.t, cfg.orders, cfg.paths_or(100000),
                                          cfg.resolved_delta_r(cfg.t), cfg.seed, opts);
    } else if (cfg.mode == "cov") {
        reports.push_back(compare_covariance(cfg.params(), cfg.s, cfg.t, cfg.paths_or(100000),
                                             cfg.resolved_delta_r(std::max(cfg.s, cfg.t)), cfg.seed, opts));
    } else if (cfg.mode == "variance") {
        reports.push_back(
            compare_covariance(cfg.params(), cfg.t, cfg.t, cfg.paths_or(100000), cfg.resolved_delta_r(cfg.t), cfg.seed, opts));
    } else {
        throw ParameterError("unknown verify mode '" + cfg.mode + "'");
    }
    const bool pass = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.oracles_pass(); });
    json doc = base_document("verify");
    doc["mode"] = cfg.mode;
    doc["reports"] = reports;
    doc["oracles_pass"] = pass;
    const std::string text = doc.dump(2) + "\n";
    write_text(cfg.out, text, out);
    return pass ? kSuccess : kOracleFailure;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        cells.push_back(cell);
    }
    return cells;
}

DecayScan read_scan_csv(const std::string& path, double s) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path);
    }
    std::string line;
    if (!std::getline(in, line) || line != "t,corr,stderr") {
        throw ParameterError(path + ": expected header t,corr,stderr");
    }
    DecayScan scan;
    scan.s = s;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        const auto cells = split_csv_line(line);
        if (cells.size() != 3) {
            throw ParameterError(path + ": malformed row '" + line + "'");
        }
        try {
            scan.t_values.push_back(std::stod(cells[0]));
            scan.correlations.push_back({std::stod(cells[1]), std::stod(cells[2]), 0});
        } catch (const std::exception&) {
            throw ParameterError(path + ": malformed row '" + line + "'");
        }
    }
    scan.fit = fit_decay_exponent(s, scan.t_values, scan.correlations);
    return scan;
}

int cmd_lrd_scan(const RunConfig& cfg, std::ostream& out) {
    const FmfBmParams p = cfg.params();
    if (!(cfg.s > 0.0)) {
        throw ParameterError("--s must be > 0");
    }
    if (!(cfg.tolerance >= 0.0)) {
        throw ParameterError("--tolerance must be >= 0");
    }
    DecayScan scan;
    std::string csv_path = cfg.out.empty() ? "lrd_scan.csv" : cfg.out;
    if (!cfg.replay.empty()) {
        scan = read_scan_csv(cfg.replay, cfg.s);
        csv_path.clear();
    } else {
        const TimeGrid grid = parse_grid_spec(cfg.grid);
        scan = run_decay_scan(p, cfg.s, grid, cfg.paths_or(20000), cfg.resolved_delta_r(std::max(grid.back(), cfg.s)),
                              cfg.seed, cfg.ensemble_options());
        std::string csv = "t,corr,stderr\n";
        for (std::size_t i = 0; i < scan.t_values.size(); ++i) {
            csv += format_double(scan.t_values[i]) + "," + format_double(scan.correlations[i].value) + "," +
                   format_double(scan.correlations[i].std_error) + "\n";
        }
        write_text(csv_path, csv, out);
    }
    const std::optional<double> theory_d = theory_decay_exponent(p);
    json doc = base_document("lrd-scan");
    doc["s"] = cfg.s;
    doc["fitted_d"] = json_number(scan.fit.exponent_d);
    doc["prefactor_c"] = json_number(scan.fit.prefactor_c);
    doc["r_squared"] = json_number(scan.fit.r_squared);
    doc["fit"] = scan.fit;
    doc["theory_d"] = theory_d ? json_number(*theory_d) : json(nullptr);
    doc["tolerance"] = cfg.tolerance;
    doc["verdict"] = theory_d ? json(std::abs(scan.fit.exponent_d - *theory_d) <= cfg.tolerance) : json(nullptr);
    doc["csv"] = csv_path.empty() || csv_path == "-" ? json(nullptr) : json(csv_path);
    doc["replay"] = cfg.replay.empty() ? json(nullptr) : json(cfg.replay);
    out << doc.dump(2) << "\n";
    return kSuccess;
}

void add_params(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--alpha", cfg.alpha, "stable index in (0,1]")->capture_default_str();
    sub->add_option("--a", cfg.a, "coefficient of B^{H1}")->capture_default_str();
    sub->add_option("--b", cfg.b, "coefficient of B^{H2}")->capture_default_str();
    sub->add_option("--h1", cfg.h1, "Hurst exponent H1")->capture_default_str();
    sub->add_option("--h2", cfg.h2, "Hurst exponent H2")->capture_default_str();
}

void add_simulation(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--paths", cfg.paths, "number of paths (0: command default)");
    sub->add_option("--delta-r", cfg.delta_r, "operational time step (0: about 1e4 steps to E[T_tmax])")
        ->capture_default_str();
    sub->add_option("--seed", cfg.seed, "master seed")->capture_default_str();
    sub->add_option("--threads", cfg.threads, "worker threads (0: all cores)")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Simulation and verification of the time-changed fractional mixed fBm", "tcfbm"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);
    app.add_option("--config", "JSON file whose keys mirror the flags; flags override it");

    auto* simulate = app.add_subcommand("simulate", "write an ensemble of L paths as CSV");
    add_params(simulate, cfg);
    add_simulation(simulate, cfg);
    simulate->add_option("--grid", cfg.grid, "lin:<t0>:<t1>:<n> or log:<t0>:<t1>:<n>")->capture_default_str();
    simulate->add_option("--out", cfg.out, "output file (default stdout)");
    simulate->add_option("--format", cfg.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();

    auto* price = app.add_subcommand("price", "write price paths S0 exp(mu T + sigma L) as CSV");
    add_params(price, cfg);
    add_simulation(price, cfg);
    price->add_option("--grid", cfg.grid, "time grid spec")->capture_default_str();
    price->add_option("--s0", cfg.s0, "initial price")->capture_default_str();
    price->add_option("--mu", cfg.mu, "rate of return")->capture_default_str();
    price->add_option("--sigma", cfg.sigma, "volatility")->capture_default_str();
    price->add_option("--out", cfg.out, "output file (default stdout)");
    price->add_option("--format", cfg.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();

    auto* theory = app.add_subcommand("theory", "evaluate the closed forms as JSON");
    add_params(theory, cfg);
    theory->add_option("--s", cfg.s, "earlier time")->capture_default_str();
    theory->add_option("--t", cfg.t, "later time")->capture_default_str();
    theory->add_option("--format", cfg.format, "json")->check(CLI::IsMember({"json"}));

    auto* verify = app.add_subcommand("verify", "Monte Carlo checks against closed forms");
    verify->add_option("mode", cfg.mode, "laplace | moments | cov | variance")
        ->required()
        ->check(CLI::IsMember({"laplace", "moments", "cov", "variance"}));
    add_params(verify, cfg);
    add_simulation(verify, cfg);
    verify->add_option("--s", cfg.s, "earlier time")->capture_default_str();
    verify->add_option("--t", cfg.t, "later time")->capture_default_str();
    verify->add_option("--u", cfg.u_values, "Laplace arguments")->delimiter(',');
    verify->add_option("--orders", cfg.orders, "moment orders")->delimiter(',');
    verify->add_option("--out", cfg.out, "report file (default stdout)");
    verify->add_option("--format", cfg.format, "json")->check(CLI::IsMember({"json"}));

    auto* lrd = app.add_subcommand("lrd-scan", "fit the power-law decay of Corr(L_t, L_s)");
    add_params(lrd, cfg);
    add_simulation(lrd, cfg);
    lrd->add_option("--s", cfg.s, "fixed earlier time")->capture_default_str();
    lrd->add_option("--grid", cfg.grid, "t grid, e.g. log:10:1000:20")->capture_default_str();
    lrd->add_option("--tolerance", cfg.tolerance, "allowed |fitted d - theory d|")->capture_default_str();
    lrd->add_option("--out", cfg.out, "CSV output for t,corr,stderr (default lrd_scan.csv)");
    lrd->add_option("--replay", cfg.replay, "fit an existing t,corr,stderr CSV instead of simulating");
    lrd->add_option("--format", cfg.format, "json")->check(CLI::IsMember({"json"}));

    try {
        std::vector<std::string> args = expand_config(raw_args);
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kSuccess;
        }
        err << "error: " << e.what() << "\n";
        return kInvalidParameters;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kIoFailure;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kInvalidParameters;
    }

    try {
        if (simulate->parsed()) {
            return cmd_simulate(cfg, out);
        }
        if (price->parsed()) {
            return cmd_price(cfg, out);
        }
        if (theory->parsed()) {
            return cmd_theory(cfg, out);
        }
        if (verify->parsed()) {
            return cmd_verify(cfg, out);
        }
        if (lrd->parsed()) {
            return cmd_lrd_scan(cfg, out);
        }
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kIoFailure;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kInvalidParameters;
    }
    return kInvalidParameters;
}

}  // namespace tcfbm::cli
