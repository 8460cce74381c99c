#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tcfbm/subordinator.hpp"
#include "tcfbm/theory.hpp"
#include "tcfbm/timechange.hpp"
#include "tcfbm/types.hpp"

namespace tcfbm {

// |z| <= 4 counts as agreement.
inline constexpr double kZThreshold = 4.0;

struct EnsembleOptions {
    unsigned threads = 0;  // 0: hardware concurrency
    std::size_t max_points = kDefaultMaxGridPoints;
};

// n_paths realizations on a shared grid, stored row-major.
class Ensemble {
public:
    Ensemble(TimeGrid grid, std::size_t n_paths, std::uint64_t master_seed, std::optional<FmfBmParams> params = {});

    const TimeGrid& grid() const noexcept { return grid_; }
    std::size_t n_paths() const noexcept { return n_paths_; }
    std::uint64_t master_seed() const noexcept { return master_seed_; }
    const std::optional<FmfBmParams>& params() const noexcept { return params_; }

    double value(std::size_t path, std::size_t t_index) const { return data_[path * grid_.size() + t_index]; }
    std::span<double> row(std::size_t path) { return {data_.data() + path * grid_.size(), grid_.size()}; }
    std::span<const double> row(std::size_t path) const { return {data_.data() + path * grid_.size(), grid_.size()}; }
    SamplePath path(std::size_t i) const;

private:
    TimeGrid grid_;
    std::size_t n_paths_;
    std::uint64_t master_seed_;
    std::optional<FmfBmParams> params_;
    std::vector<double> data_;
};

// Path i is sample_time_changed_fmfbm driven by substream(master_seed, i), so the
// result does not depend on the thread count.
Ensemble generate_ensemble(const FmfBmParams& params, const TimeGrid& grid, std::size_t n_paths, double delta_r,
                           std::uint64_t master_seed, const EnsembleOptions& options = {});

// Ensemble of inverse-subordinator values T_t (path i from substream(master_seed, i)).
Ensemble generate_inverse_subordinator_ensemble(StableIndex alpha, const TimeGrid& grid, std::size_t n_paths,
                                                double delta_r, std::uint64_t master_seed,
                                                const EnsembleOptions& options = {});

// Ensemble of price paths S_t.
Ensemble generate_price_ensemble(const PriceModelParams& params, const TimeGrid& grid, std::size_t n_paths,
                                 double delta_r, std::uint64_t master_seed, const EnsembleOptions& options = {});

// Point estimate with std_error = sample sd (n-1 denominator) / sqrt(n).
struct MCEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::size_t n = 0;
};

// Throws PreconditionError for fewer than two samples.
MCEstimate estimate_mean(std::span<const double> samples);

enum class MomentConvention {
    Integer,   // plain power value^n, sign kept for odd n
    Absolute,  // |value|^q for non-integer q
};

struct MomentEstimate {
    MCEstimate estimate;
    MomentConvention convention;
};

MomentEstimate empirical_moment(const Ensemble& ens, std::size_t t_index, double order);

// Mean of value[s] * value[t] over paths.
MCEstimate empirical_cross_moment(const Ensemble& ens, std::size_t s_index, std::size_t t_index);

struct BootstrapOptions {
    std::size_t resamples = 200;
    std::optional<std::uint64_t> seed;  // default derived from the ensemble seed and indices
};

// Plug-in E[UV] / sqrt(E[U^2] E[V^2]) for the centered process, std_error by
// nonparametric bootstrap. Raw (unclamped) value.
MCEstimate empirical_correlation(const Ensemble& ens, std::size_t s_index, std::size_t t_index,
                                 const BootstrapOptions& bootstrap = {});

struct Candidate {
    std::string label;
    double value;
    double z_score;  // (mc - value) / std_error; 0 for an exact match with zero std_error
    bool within_4se;
    bool oracle;  // analytically exact reference; only these decide pass/fail
};

struct ComparisonReport {
    std::string quantity;
    MCEstimate mc;
    std::vector<Candidate> candidates;

    void add_candidate(std::string label, double value, bool oracle);
    const Candidate& candidate(const std::string& label) const;
    // Every oracle candidate within 4 standard errors.
    bool oracles_pass() const;
};

// MC mean of exp(-u S) against exp(-u^alpha), one report per u. Requires alpha < 1, n >= 1000.
std::vector<ComparisonReport> laplace_check(StableIndex alpha, std::span<const double> u_values, std::size_t n,
                                            std::uint64_t seed);

// MC moments of T_t against t^{q alpha} Gamma(q+1) / Gamma(q alpha + 1); integer orders
// are exact oracles, non-integer orders are reported only.
std::vector<ComparisonReport> compare_inverse_moments(StableIndex alpha, double t, std::span<const double> orders,
                                                      std::size_t n, double delta_r, std::uint64_t seed,
                                                      const EnsembleOptions& options = {});

// MC E[L_s L_t] against both closed-form variants, plus the exact time-changed-BM
// oracle when the process is a single Brownian component. At alpha = 1 the closed
// forms are exact and flagged as oracles.
ComparisonReport compare_covariance(const FmfBmParams& params, double s, double t, std::size_t n, double delta_r,
                                    std::uint64_t seed, const EnsembleOptions& options = {});

struct DecayFit {
    double exponent_d = 0.0;
    double prefactor_c = 0.0;
    double r_squared = 0.0;
    double t_min = 0.0;
    double t_max = 0.0;
    std::size_t n_points = 0;
    std::size_t n_dropped = 0;
};

// OLS of log corr on log t: slope = -d, intercept = log c. Estimates are clamped to
// [-1, 1]; non-positive ones are dropped and counted. Throws FitError with fewer
// than 3 usable points.
DecayFit fit_decay_exponent(double s, std::span<const double> t_values, std::span<const MCEstimate> corr_estimates);

struct DecayScan {
    double s;
    std::vector<double> t_values;
    std::vector<MCEstimate> correlations;
    DecayFit fit;
};

// Simulates on {s} U t_grid and fits the decay of Corr(L_t, L_s).
DecayScan run_decay_scan(const FmfBmParams& params, double s, const TimeGrid& t_grid, std::size_t n, double delta_r,
                         std::uint64_t seed, const EnsembleOptions& options = {});

// d predicted by the slowest term of the correlation expansion: 1 - alpha H2 when
// b != 0 (and H1 < H2 or a == 0), 1 - alpha H1 when b == 0; empty otherwise.
std::optional<double> theory_decay_exponent(const FmfBmParams& params);

}  // namespace tcfbm
