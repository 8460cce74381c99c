#include "tcfbm/types.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "tcfbm/error.hpp"

namespace tcfbm {

Hurst::Hurst(double value) : value_(value) {
    if (!(value > 0.0 && value < 1.0)) {
        throw ParameterError("Hurst exponent must lie in (0,1), got " + std::to_string(value));
    }
}

StableIndex::StableIndex(double alpha) : alpha_(alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw ParameterError("stable index must lie in (0,1], got " + std::to_string(alpha));
    }
}

TimeGrid::TimeGrid(std::vector<double> times) : times_(std::move(times)) {
    for (std::size_t i = 0; i < times_.size(); ++i) {
        if (!std::isfinite(times_[i]) || times_[i] < 0.0) {
            throw ParameterError("time grid entries must be finite and >= 0");
        }
        if (i > 0 && !(times_[i] > times_[i - 1])) {
            throw ParameterError("time grid must be strictly increasing");
        }
    }
}

TimeGrid TimeGrid::linear(double t0, double t1, std::size_t n) {
    if (n < 2 || !(t1 > t0) || t0 < 0.0) {
        throw ParameterError("linear grid needs n >= 2 and t1 > t0 >= 0");
    }
    std::vector<double> t(n);
    const double h = (t1 - t0) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        t[i] = t0 + h * static_cast<double>(i);
    }
    t.back() = t1;
    return TimeGrid(std::move(t));
}

TimeGrid TimeGrid::log_spaced(double t0, double t1, std::size_t n) {
    if (n < 2 || !(t1 > t0) || !(t0 > 0.0)) {
        throw ParameterError("log grid needs n >= 2 and t1 > t0 > 0");
    }
    std::vector<double> t(n);
    const double l0 = std::log(t0);
    const double step = (std::log(t1) - l0) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        t[i] = std::exp(l0 + step * static_cast<double>(i));
    }
    t.front() = t0;
    t.back() = t1;
    return TimeGrid(std::move(t));
}

std::size_t TimeGrid::index_of(double t) const {
    auto it = std::lower_bound(times_.begin(), times_.end(), t);
    if (it == times_.end() || *it != t) {
        throw ParameterError("time " + std::to_string(t) + " is not a grid point");
    }
    return static_cast<std::size_t>(it - times_.begin());
}

SamplePath::SamplePath(TimeGrid g, std::vector<double> v) : grid(std::move(g)), values(std::move(v)) {
    if (values.size() != grid.size()) {
        throw ParameterError("sample path length does not match its grid");
    }
}

}  // namespace tcfbm
