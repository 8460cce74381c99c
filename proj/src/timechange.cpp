#include "tcfbm/timechange.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "tcfbm/error.hpp"
#include "tcfbm/gaussian.hpp"

namespace tcfbm {

FmfBmParams::FmfBmParams(double a_, double b_, Hurst h1_, Hurst h2_, StableIndex alpha_)
    : a(a_), b(b_), h1(h1_), h2(h2_), alpha(alpha_) {
    if (!std::isfinite(a) || !std::isfinite(b)) {
        throw ParameterError("coefficients a, b must be finite");
    }
    if (a == 0.0 && b == 0.0) {
        throw ParameterError("(a,b) = (0,0) is excluded");
    }
}

PriceModelParams::PriceModelParams(double s0_, double mu_, double sigma_, FmfBmParams mix_)
    : s0(s0_), mu(mu_), sigma(sigma_), mix(mix_) {
    if (!(s0 > 0.0) || !std::isfinite(s0)) {
        throw ParameterError("S0 must be positive");
    }
    if (!std::isfinite(mu) || !std::isfinite(sigma)) {
        throw ParameterError("mu and sigma must be finite");
    }
}

TimeChangedPath sample_time_changed_fmfbm_with_clock(const FmfBmParams& params, const TimeGrid& t_grid,
                                                     double delta_r, Rng& rng, std::size_t max_points) {
    InverseSubordinatorPath clock = sample_inverse_subordinator(params.alpha, t_grid, delta_r, rng, max_points);

    // Clock values are non-decreasing, so exact-equality dedup leaves a strictly increasing grid.
    std::vector<double> unique_times = clock.T;
    unique_times.erase(std::unique(unique_times.begin(), unique_times.end()), unique_times.end());
    const TimeGrid operational(std::move(unique_times));

    std::vector<double> mixed(operational.size(), 0.0);
    std::vector<double> component;
    if (params.a != 0.0) {
        FbmSampler(params.h1, operational).sample_into(rng, component);
        for (std::size_t i = 0; i < mixed.size(); ++i) {
            mixed[i] += params.a * component[i];
        }
    }
    if (params.b != 0.0) {
        FbmSampler(params.h2, operational).sample_into(rng, component);
        for (std::size_t i = 0; i < mixed.size(); ++i) {
            mixed[i] += params.b * component[i];
        }
    }

    std::vector<double> values(t_grid.size());
    std::size_t u = 0;
    for (std::size_t j = 0; j < values.size(); ++j) {
        while (operational[u] != clock.T[j]) {
            ++u;
        }
        values[j] = mixed[u];
    }
    SamplePath path(t_grid, std::move(values));
    return {std::move(clock), std::move(path)};
}

SamplePath sample_time_changed_fmfbm(const FmfBmParams& params, const TimeGrid& t_grid, double delta_r, Rng& rng,
                                     std::size_t max_points) {
    return sample_time_changed_fmfbm_with_clock(params, t_grid, delta_r, rng, max_points).path;
}

SamplePath sample_price_path(const PriceModelParams& params, const TimeGrid& t_grid, double delta_r, Rng& rng,
                             std::size_t max_points) {
    auto [clock, path] = sample_time_changed_fmfbm_with_clock(params.mix, t_grid, delta_r, rng, max_points);
    for (std::size_t j = 0; j < path.values.size(); ++j) {
        path.values[j] = params.s0 * std::exp(params.mu * clock.T[j] + params.sigma * path.values[j]);
    }
    return path;
}

}  // namespace tcfbm
