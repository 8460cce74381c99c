#pragma once

#include <cstddef>

#include "tcfbm/random.hpp"
#include "tcfbm/subordinator.hpp"
#include "tcfbm/types.hpp"

namespace tcfbm {

// Parameters of L_t = a B^{H1}(T_t) + b B^{H2}(T_t). (a, b) must not both vanish.
struct FmfBmParams {
    double a;
    double b;
    Hurst h1;
    Hurst h2;
    StableIndex alpha;

    FmfBmParams(double a, double b, Hurst h1, Hurst h2, StableIndex alpha);
};

// S_t = S0 exp(mu T_t + sigma L_t). With H1 = 1/2 this is the mixed (Brownian + fBm) model.
struct PriceModelParams {
    double s0;
    double mu;
    double sigma;
    FmfBmParams mix;

    PriceModelParams(double s0, double mu, double sigma, FmfBmParams mix);
};

struct TimeChangedPath {
    InverseSubordinatorPath clock;
    SamplePath path;
};

// One inverse-subordinator clock shared by both parents. The parents are drawn at
// the distinct clock values only, so equal T values give bit-identical L values.
TimeChangedPath sample_time_changed_fmfbm_with_clock(const FmfBmParams& params, const TimeGrid& t_grid,
                                                     double delta_r, Rng& rng,
                                                     std::size_t max_points = kDefaultMaxGridPoints);

SamplePath sample_time_changed_fmfbm(const FmfBmParams& params, const TimeGrid& t_grid, double delta_r, Rng& rng,
                                     std::size_t max_points = kDefaultMaxGridPoints);

SamplePath sample_price_path(const PriceModelParams& params, const TimeGrid& t_grid, double delta_r, Rng& rng,
                             std::size_t max_points = kDefaultMaxGridPoints);

}  // namespace tcfbm
