#include "tcfbm/subordinator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "tcfbm/error.hpp"
#include "tcfbm/special.hpp"

namespace tcfbm {

TimeGrid SubordinatorPath::r_grid() const {
    std::vector<double> r(eta.size());
    for (std::size_t k = 0; k < r.size(); ++k) {
        r[k] = this->r(k);
    }
    return TimeGrid(std::move(r));
}

PositiveStableSampler::PositiveStableSampler(StableIndex alpha)
    : alpha_(alpha.value()), inv_alpha_(1.0 / alpha.value()), tail_power_((1.0 - alpha.value()) / alpha.value()) {
    if (alpha.is_identity()) {
        throw ParameterError("positive stable variate requires alpha < 1; alpha = 1 is the identity time");
    }
}

double PositiveStableSampler::operator()(Rng& rng) const {
    const double u = std::numbers::pi * uniform_open(rng);
    const double e = standard_exponential(rng);
    // S = sin(a u) / sin(u)^{1/a} * (sin((1-a) u) / E)^{(1-a)/a}, evaluated in logs.
    const double log_s = std::log(std::sin(alpha_ * u)) - inv_alpha_ * std::log(std::sin(u)) +
                         tail_power_ * (std::log(std::sin((1.0 - alpha_) * u)) - std::log(e));
    return std::exp(log_s);
}

double sample_positive_stable(StableIndex alpha, Rng& rng) {
    return PositiveStableSampler(alpha)(rng);
}

namespace {

void check_delta_r(double delta_r) {
    if (!(delta_r > 0.0) || !std::isfinite(delta_r)) {
        throw ParameterError("delta_r must be positive and finite");
    }
}

[[noreturn]] void throw_cap(std::size_t max_points) {
    throw ResourceError("operational grid exceeded " + std::to_string(max_points) +
                        " points; increase delta_r or the cap");
}

}  // namespace

SubordinatorPath sample_subordinator_path(StableIndex alpha, double delta_r, double t_max, Rng& rng,
                                          std::size_t max_points) {
    check_delta_r(delta_r);
    if (!(t_max > 0.0) || !std::isfinite(t_max)) {
        throw ParameterError("t_max must be positive and finite");
    }
    SubordinatorPath path;
    path.delta_r = delta_r;
    path.eta.push_back(0.0);
    if (alpha.is_identity()) {
        for (std::size_t k = 1; path.eta.back() < t_max; ++k) {
            if (k >= max_points) {
                throw_cap(max_points);
            }
            path.eta.push_back(path.r(k));
        }
        return path;
    }
    const PositiveStableSampler stable(alpha);
    const double scale = std::pow(delta_r, 1.0 / alpha.value());
    while (path.eta.back() < t_max) {
        if (path.eta.size() >= max_points) {
            throw_cap(max_points);
        }
        path.eta.push_back(path.eta.back() + scale * stable(rng));
    }
    return path;
}

InverseSubordinatorPath invert_subordinator_path(const SubordinatorPath& eta, const TimeGrid& t_grid) {
    if (eta.eta.empty()) {
        throw PreconditionError("empty subordinator path");
    }
    if (!t_grid.empty() && eta.eta.back() < t_grid.back()) {
        throw PreconditionError("subordinator path does not reach t = " + std::to_string(t_grid.back()));
    }
    InverseSubordinatorPath out;
    out.t_grid = t_grid;
    out.delta_r = eta.delta_r;
    out.T.resize(t_grid.size());
    for (std::size_t j = 0; j < t_grid.size(); ++j) {
        if (t_grid[j] == 0.0) {
            out.T[j] = 0.0;
            continue;
        }
        const auto it = std::lower_bound(eta.eta.begin(), eta.eta.end(), t_grid[j]);
        out.T[j] = eta.r(static_cast<std::size_t>(it - eta.eta.begin()));
    }
    return out;
}

InverseSubordinatorPath sample_inverse_subordinator(StableIndex alpha, const TimeGrid& t_grid, double delta_r,
                                                    Rng& rng, std::size_t max_points) {
    check_delta_r(delta_r);
    InverseSubordinatorPath out;
    out.t_grid = t_grid;
    out.delta_r = delta_r;
    if (alpha.is_identity()) {
        out.T = t_grid.vector();
        return out;
    }
    out.T.resize(t_grid.size());
    const PositiveStableSampler stable(alpha);
    const double scale = std::pow(delta_r, 1.0 / alpha.value());
    double eta = 0.0;
    std::size_t k = 0;
    for (std::size_t j = 0; j < t_grid.size(); ++j) {
        const double t = t_grid[j];
        if (t == 0.0) {
            out.T[j] = 0.0;
            continue;
        }
        while (eta < t) {
            if (k + 1 >= max_points) {
                throw_cap(max_points);
            }
            eta += scale * stable(rng);
            ++k;
        }
        out.T[j] = static_cast<double>(k) * delta_r;
    }
    return out;
}

double default_delta_r(StableIndex alpha, double t_max, std::size_t points) {
    if (!(t_max > 0.0) || points == 0) {
        throw ParameterError("default_delta_r needs t_max > 0 and points >= 1");
    }
    const double a = alpha.value();
    return std::pow(t_max, a) / gamma_fn(a + 1.0) / static_cast<double>(points);
}

double inverse_moment(StableIndex alpha, double t, int n) {
    if (n < 1) {
        throw ParameterError("moment order must be >= 1");
    }
    return inverse_moment_real(alpha, t, static_cast<double>(n));
}

double inverse_moment_real(StableIndex alpha, double t, double q) {
    if (!(t >= 0.0)) {
        throw ParameterError("inverse_moment requires t >= 0");
    }
    if (!(q > 0.0)) {
        throw ParameterError("moment order must be > 0");
    }
    const double a = alpha.value();
    // Gamma ratio first: at alpha = 1 it is exactly 1 and the result is exactly t^q.
    return std::pow(t, q * a) * (gamma_fn(q + 1.0) / gamma_fn(q * a + 1.0));
}

}  // namespace tcfbm
