#pragma once

#include <cstddef>
#include <vector>

#include "tcfbm/random.hpp"
#include "tcfbm/types.hpp"

namespace tcfbm {

inline constexpr std::size_t kDefaultMaxGridPoints = 10'000'000;
inline constexpr std::size_t kDefaultOperationalPoints = 10'000;

// alpha-stable subordinator eta sampled on the operational grid r_k = k * delta_r.
struct SubordinatorPath {
    double delta_r = 0.0;
    std::vector<double> eta;  // eta[0] == 0, non-decreasing

    double r(std::size_t k) const noexcept { return static_cast<double>(k) * delta_r; }
    TimeGrid r_grid() const;
};

// First-passage times T_j = min{ r_k : eta_k >= t_j } on a physical-time grid.
// The discrete inversion overestimates T by at most delta_r.
struct InverseSubordinatorPath {
    TimeGrid t_grid;
    std::vector<double> T;
    double delta_r = 0.0;
};

// One positive stable variate with E[exp(-u S)] = exp(-u^alpha).
// Kanter's representation: one uniform angle on (0, pi) and one unit exponential.
class PositiveStableSampler {
public:
    explicit PositiveStableSampler(StableIndex alpha);

    double operator()(Rng& rng) const;
    double alpha() const noexcept { return alpha_; }

private:
    double alpha_;
    double inv_alpha_;
    double tail_power_;  // (1 - alpha) / alpha
};

// Throws ParameterError for alpha == 1, where the variate is the constant 1 and
// callers take the identity-time branch instead.
double sample_positive_stable(StableIndex alpha, Rng& rng);

// eta on r_k = k * delta_r from i.i.d. increments delta_r^{1/alpha} * S_k, extended
// until the last value is >= t_max. alpha == 1 gives eta_k = r_k.
SubordinatorPath sample_subordinator_path(StableIndex alpha, double delta_r, double t_max, Rng& rng,
                                          std::size_t max_points = kDefaultMaxGridPoints);

InverseSubordinatorPath invert_subordinator_path(const SubordinatorPath& eta, const TimeGrid& t_grid);

// Equivalent to inverting sample_subordinator_path(alpha, delta_r, t_grid.back(), rng),
// consuming the same random stream, but without storing eta. alpha == 1 returns T == t.
InverseSubordinatorPath sample_inverse_subordinator(StableIndex alpha, const TimeGrid& t_grid, double delta_r,
                                                    Rng& rng, std::size_t max_points = kDefaultMaxGridPoints);

// Step giving about `points` operational grid points up to E[T_{t_max}].
double default_delta_r(StableIndex alpha, double t_max, std::size_t points = kDefaultOperationalPoints);

// E[(T_t)^n] = t^{n alpha} n! / Gamma(n alpha + 1).
double inverse_moment(StableIndex alpha, double t, int n);

// t^{q alpha} Gamma(q + 1) / Gamma(q alpha + 1), the real-order extension.
double inverse_moment_real(StableIndex alpha, double t, double q);

}  // namespace tcfbm
