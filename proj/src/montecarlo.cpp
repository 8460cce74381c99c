#include "tcfbm/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>
#include <utility>

#include "tcfbm/error.hpp"
#include "tcfbm/random.hpp"

namespace tcfbm {

Ensemble::Ensemble(TimeGrid grid, std::size_t n_paths, std::uint64_t master_seed, std::optional<FmfBmParams> params)
    : grid_(std::move(grid)), n_paths_(n_paths), master_seed_(master_seed), params_(std::move(params)) {
    if (n_paths_ == 0) {
        throw ParameterError("an ensemble needs at least one path");
    }
    data_.assign(n_paths_ * grid_.size(), 0.0);
}

SamplePath Ensemble::path(std::size_t i) const {
    const auto r = row(i);
    return SamplePath(grid_, std::vector<double>(r.begin(), r.end()));
}

namespace {

// Runs fill(i, rng, row) for every path, each with its own substream. Work is split
// into contiguous blocks; the output does not depend on the split.
template <typename Fill>
void fill_paths(Ensemble& ens, const EnsembleOptions& options, Fill fill) {
    const std::size_t n = ens.n_paths();
    unsigned threads = options.threads != 0 ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));

    auto run_block = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            Rng rng = substream(ens.master_seed(), i);
            fill(i, rng, ens.row(i));
        }
    };
    if (threads <= 1) {
        run_block(0, n);
        return;
    }

    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    const std::size_t chunk = (n + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
        const std::size_t begin = std::min(n, w * chunk);
        const std::size_t end = std::min(n, begin + chunk);
        workers.emplace_back([&, begin, end] {
            try {
                run_block(begin, end);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        });
    }
    workers.clear();
    if (failure) {
        std::rethrow_exception(failure);
    }
}

void copy_row(const std::vector<double>& values, std::span<double> row) {
    std::copy(values.begin(), values.end(), row.begin());
}

}  // namespace

Ensemble generate_ensemble(const FmfBmParams& params, const TimeGrid& grid, std::size_t n_paths, double delta_r,
                           std::uint64_t master_seed, const EnsembleOptions& options) {
    Ensemble ens(grid, n_paths, master_seed, params);
    fill_paths(ens, options, [&](std::size_t, Rng& rng, std::span<double> row) {
        copy_row(sample_time_changed_fmfbm(params, grid, delta_r, rng, options.max_points).values, row);
    });
    return ens;
}

Ensemble generate_inverse_subordinator_ensemble(StableIndex alpha, const TimeGrid& grid, std::size_t n_paths,
                                                double delta_r, std::uint64_t master_seed,
                                                const EnsembleOptions& options) {
    Ensemble ens(grid, n_paths, master_seed);
    fill_paths(ens, options, [&](std::size_t, Rng& rng, std::span<double> row) {
        copy_row(sample_inverse_subordinator(alpha, grid, delta_r, rng, options.max_points).T, row);
    });
    return ens;
}

Ensemble generate_price_ensemble(const PriceModelParams& params, const TimeGrid& grid, std::size_t n_paths,
                                 double delta_r, std::uint64_t master_seed, const EnsembleOptions& options) {
    Ensemble ens(grid, n_paths, master_seed, params.mix);
    fill_paths(ens, options, [&](std::size_t, Rng& rng, std::span<double> row) {
        copy_row(sample_price_path(params, grid, delta_r, rng, options.max_points).values, row);
    });
    return ens;
}

MCEstimate estimate_mean(std::span<const double> samples) {
    const std::size_t n = samples.size();
    if (n < 2) {
        throw PreconditionError("standard error needs at least two samples");
    }
    double mean = 0.0;
    for (double x : samples) {
        mean += x;
    }
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double x : samples) {
        ss += (x - mean) * (x - mean);
    }
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    return {mean, sd / std::sqrt(static_cast<double>(n)), n};
}

namespace {

void check_index(const Ensemble& ens, std::size_t index) {
    if (index >= ens.grid().size()) {
        throw ParameterError("time index out of range");
    }
}

}  // namespace

MomentEstimate empirical_moment(const Ensemble& ens, std::size_t t_index, double order) {
    check_index(ens, t_index);
    if (!(order > 0.0)) {
        throw ParameterError("moment order must be > 0");
    }
    const bool integer = order == std::floor(order);
    std::vector<double> samples(ens.n_paths());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double x = ens.value(i, t_index);
        samples[i] = integer ? std::pow(x, order) : std::pow(std::abs(x), order);
    }
    return {estimate_mean(samples), integer ? MomentConvention::Integer : MomentConvention::Absolute};
}

MCEstimate empirical_cross_moment(const Ensemble& ens, std::size_t s_index, std::size_t t_index) {
    check_index(ens, s_index);
    check_index(ens, t_index);
    std::vector<double> samples(ens.n_paths());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        samples[i] = ens.value(i, s_index) * ens.value(i, t_index);
    }
    return estimate_mean(samples);
}

MCEstimate empirical_correlation(const Ensemble& ens, std::size_t s_index, std::size_t t_index,
                                 const BootstrapOptions& bootstrap) {
    check_index(ens, s_index);
    check_index(ens, t_index);
    const std::size_t n = ens.n_paths();
    if (n < 2) {
        throw PreconditionError("correlation needs at least two paths");
    }
    if (s_index == t_index) {
        return {1.0, 0.0, n};
    }
    auto plug_in = [&](auto&& index_of) {
        double uv = 0.0;
        double uu = 0.0;
        double vv = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const std::size_t i = index_of(k);
            const double u = ens.value(i, s_index);
            const double v = ens.value(i, t_index);
            uv += u * v;
            uu += u * u;
            vv += v * v;
        }
        return std::pair{uv / std::sqrt(uu * vv), uu > 0.0 && vv > 0.0};
    };
    const auto [value, ok] = plug_in([](std::size_t k) { return k; });
    if (!ok) {
        throw DomainError("zero empirical second moment; correlation undefined");
    }
    if (bootstrap.resamples < 2) {
        throw ParameterError("bootstrap needs at least two resamples");
    }
    const std::uint64_t seed =
        bootstrap.seed.value_or(mix64(ens.master_seed() ^ 0xC0AAE1A7EB007ULL));
    Rng rng = substream(seed, s_index * ens.grid().size() + t_index);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::vector<std::size_t> draw(n);
    std::vector<double> replicates;
    replicates.reserve(bootstrap.resamples);
    for (std::size_t b = 0; b < bootstrap.resamples; ++b) {
        for (auto& d : draw) {
            d = pick(rng);
        }
        const auto [r, r_ok] = plug_in([&](std::size_t k) { return draw[k]; });
        if (r_ok) {
            replicates.push_back(r);
        }
    }
    double se = 0.0;
    if (replicates.size() >= 2) {
        // sd of the bootstrap replicates is the standard error itself
        se = estimate_mean(replicates).std_error * std::sqrt(static_cast<double>(replicates.size()));
    }
    return {value, se, n};
}

void ComparisonReport::add_candidate(std::string label, double value, bool oracle) {
    double z = 0.0;
    if (mc.std_error > 0.0) {
        z = (mc.value - value) / mc.std_error;
    } else if (mc.value != value) {
        z = mc.value > value ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
    }
    candidates.push_back({std::move(label), value, z, std::abs(z) <= kZThreshold, oracle});
}

const Candidate& ComparisonReport::candidate(const std::string& label) const {
    for (const auto& c : candidates) {
        if (c.label == label) {
            return c;
        }
    }
    throw ParameterError("no candidate labelled " + label);
}

bool ComparisonReport::oracles_pass() const {
    return std::all_of(candidates.begin(), candidates.end(),
                       [](const Candidate& c) { return !c.oracle || c.within_4se; });
}

std::vector<ComparisonReport> laplace_check(StableIndex alpha, std::span<const double> u_values, std::size_t n,
                                            std::uint64_t seed) {
    if (n < 1000) {
        throw ParameterError("laplace_check needs n >= 1000");
    }
    const PositiveStableSampler stable(alpha);
    Rng rng = substream(seed, 0);
    std::vector<double> draws(n);
    for (auto& s : draws) {
        s = stable(rng);
    }
    std::vector<ComparisonReport> reports;
    std::vector<double> samples(n);
    for (double u : u_values) {
        if (!(u >= 0.0)) {
            throw ParameterError("Laplace argument must be >= 0");
        }
        for (std::size_t i = 0; i < n; ++i) {
            samples[i] = std::exp(-u * draws[i]);
        }
        ComparisonReport report;
        char label[64];
        std::snprintf(label, sizeof label, "E[exp(-u S)], u=%g", u);
        report.quantity = label;
        report.mc = estimate_mean(samples);
        report.add_candidate("laplace_transform", std::exp(-std::pow(u, alpha.value())), true);
        reports.push_back(std::move(report));
    }
    return reports;
}

std::vector<ComparisonReport> compare_inverse_moments(StableIndex alpha, double t, std::span<const double> orders,
                                                      std::size_t n, double delta_r, std::uint64_t seed,
                                                      const EnsembleOptions& options) {
    if (n < 1000) {
        throw ParameterError("moment comparison needs n >= 1000");
    }
    if (!(t > 0.0)) {
        throw ParameterError("moment comparison needs t > 0");
    }
    const Ensemble ens = generate_inverse_subordinator_ensemble(alpha, TimeGrid({t}), n, delta_r, seed, options);
    std::vector<ComparisonReport> reports;
    for (double q : orders) {
        const MomentEstimate m = empirical_moment(ens, 0, q);
        ComparisonReport report;
        char label[64];
        std::snprintf(label, sizeof label, "E[T_t^q], q=%g", q);
        report.quantity = label;
        report.mc = m.estimate;
        report.add_candidate("moment_formula", inverse_moment_real(alpha, t, q),
                             m.convention == MomentConvention::Integer);
        reports.push_back(std::move(report));
    }
    return reports;
}

ComparisonReport compare_covariance(const FmfBmParams& params, double s, double t, std::size_t n, double delta_r,
                                    std::uint64_t seed, const EnsembleOptions& options) {
    if (n < 1000) {
        throw ParameterError("covariance comparison needs n >= 1000");
    }
    if (!(s >= 0.0) || !(t >= 0.0)) {
        throw ParameterError("covariance comparison needs s, t >= 0");
    }
    const double lo = std::min(s, t);
    const double hi = std::max(s, t);
    const TimeGrid grid = lo == hi ? TimeGrid({lo}) : TimeGrid({lo, hi});
    const Ensemble ens = generate_ensemble(params, grid, n, delta_r, seed, options);

    ComparisonReport report;
    report.quantity = lo == hi ? "E[L_t^2]" : "E[L_s L_t]";
    report.mc = empirical_cross_moment(ens, 0, grid.size() - 1);
    const bool exact_closed_form = params.alpha.is_identity();
    report.add_candidate("paper", covariance_tc(params, lo, hi, FormulaVariant::Published), exact_closed_form);
    report.add_candidate("oracle", covariance_tc(params, lo, hi, FormulaVariant::MomentOracle), exact_closed_form);
    if (params.h1.value() == 0.5 && params.b == 0.0) {
        report.add_candidate("tc_bm_oracle", params.a * params.a * tc_bm_covariance_oracle(params.alpha, lo, hi), true);
    } else if (params.h2.value() == 0.5 && params.a == 0.0) {
        report.add_candidate("tc_bm_oracle", params.b * params.b * tc_bm_covariance_oracle(params.alpha, lo, hi), true);
    }
    return report;
}

DecayFit fit_decay_exponent(double s, std::span<const double> t_values, std::span<const MCEstimate> corr_estimates) {
    (void)s;
    if (t_values.size() != corr_estimates.size()) {
        throw ParameterError("t values and correlation estimates differ in length");
    }
    for (std::size_t i = 1; i < t_values.size(); ++i) {
        if (!(t_values[i] > t_values[i - 1])) {
            throw ParameterError("t values must be strictly increasing");
        }
    }
    std::vector<double> x;
    std::vector<double> y;
    DecayFit fit;
    for (std::size_t i = 0; i < t_values.size(); ++i) {
        const double c = std::clamp(corr_estimates[i].value, -1.0, 1.0);
        if (!(c > 0.0) || !(t_values[i] > 0.0)) {
            ++fit.n_dropped;
            continue;
        }
        if (x.empty()) {
            fit.t_min = t_values[i];
        }
        fit.t_max = t_values[i];
        x.push_back(std::log(t_values[i]));
        y.push_back(std::log(c));
    }
    fit.n_points = x.size();
    if (fit.n_points < 3) {
        throw FitError("decay fit needs at least 3 positive correlation estimates");
    }
    const double m = static_cast<double>(x.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= m;
    my /= m;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    fit.exponent_d = -slope;
    fit.prefactor_c = std::exp(intercept);
    double ss_res = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (intercept + slope * x[i]);
        ss_res += r * r;
    }
    fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    return fit;
}

DecayScan run_decay_scan(const FmfBmParams& params, double s, const TimeGrid& t_grid, std::size_t n, double delta_r,
                         std::uint64_t seed, const EnsembleOptions& options) {
    if (!(s > 0.0)) {
        throw ParameterError("decay scan needs s > 0");
    }
    std::vector<double> times = t_grid.vector();
    times.push_back(s);
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());
    const TimeGrid grid(std::move(times));
    const Ensemble ens = generate_ensemble(params, grid, n, delta_r, seed, options);

    DecayScan scan;
    scan.s = s;
    const std::size_t s_index = grid.index_of(s);
    for (double t : t_grid.times()) {
        scan.t_values.push_back(t);
        scan.correlations.push_back(empirical_correlation(ens, s_index, grid.index_of(t)));
    }
    scan.fit = fit_decay_exponent(s, scan.t_values, scan.correlations);
    return scan;
}

std::optional<double> theory_decay_exponent(const FmfBmParams& params) {
    const double a = params.alpha.value();
    if (params.b == 0.0) {
        return 1.0 - a * params.h1.value();
    }
    if (params.a == 0.0 || params.h1.value() < params.h2.value()) {
        return 1.0 - a * params.h2.value();
    }
    return std::nullopt;
}

}  // namespace tcfbm
