#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace tcfbm {

// Hurst exponent, 0 < H < 1.
class Hurst {
public:
    explicit Hurst(double value);

    double value() const noexcept { return value_; }

private:
    double value_;
};

// Stability index of the subordinator, 0 < alpha <= 1. alpha == 1 is the
// degenerate case where the time change is the identity.
class StableIndex {
public:
    explicit StableIndex(double alpha);

    double value() const noexcept { return alpha_; }
    bool is_identity() const noexcept { return alpha_ == 1.0; }

private:
    double alpha_;
};

// Strictly increasing, nonnegative list of times.
class TimeGrid {
public:
    TimeGrid() = default;
    explicit TimeGrid(std::vector<double> times);

    // n >= 2 equally spaced points from t0 to t1 inclusive.
    static TimeGrid linear(double t0, double t1, std::size_t n);
    // n >= 2 log-spaced points from t0 > 0 to t1 inclusive.
    static TimeGrid log_spaced(double t0, double t1, std::size_t n);

    std::span<const double> times() const noexcept { return times_; }
    const std::vector<double>& vector() const noexcept { return times_; }
    std::size_t size() const noexcept { return times_.size(); }
    bool empty() const noexcept { return times_.empty(); }
    double operator[](std::size_t i) const { return times_[i]; }
    double front() const { return times_.front(); }
    double back() const { return times_.back(); }

    // Index of the grid point exactly equal to t; throws ParameterError if absent.
    std::size_t index_of(double t) const;

    friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

private:
    std::vector<double> times_;
};

// Process values on a time grid.
struct SamplePath {
    TimeGrid grid;
    std::vector<double> values;

    SamplePath() = default;
    SamplePath(TimeGrid g, std::vector<double> v);

    std::size_t size() const noexcept { return values.size(); }

    friend bool operator==(const SamplePath&, const SamplePath&) = default;
};

}  // namespace tcfbm
