#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "tcfbm/random.hpp"
#include "tcfbm/types.hpp"

namespace tcfbm {

// fBm covariance R_H(s,t) = (s^{2H} + t^{2H} - |t-s|^{2H}) / 2, for s,t >= 0.
double fbm_covariance(Hurst h, double s, double t);

// Exact sampler of fBm on a fixed grid via Cholesky factorization of [R_H(t_i,t_j)].
//
// A grid point at exactly 0 is pinned to 0 and left out of the factorized block.
// If the factorization fails, eps = 1e-12 * max diagonal is added to the diagonal
// and the factorization retried once; a second failure throws NumericalError.
class FbmSampler {
public:
    FbmSampler(Hurst h, TimeGrid grid);

    SamplePath sample(Rng& rng) const;
    // Writes the path values into `out` (size == grid size).
    void sample_into(Rng& rng, std::vector<double>& out) const;

    const TimeGrid& grid() const noexcept { return grid_; }
    Hurst hurst() const noexcept { return hurst_; }
    bool jittered() const noexcept { return jittered_; }

private:
    Hurst hurst_;
    TimeGrid grid_;
    std::size_t offset_ = 0;  // 1 when grid starts at 0
    Eigen::MatrixXd lower_;
    bool jittered_ = false;
};

SamplePath sample_fbm_at_times(Hurst h, const TimeGrid& grid, Rng& rng);

// a * B^{H1} + b * B^{H2} with independent components on a common grid.
// A component whose coefficient is exactly 0 is validated but not drawn, so the
// consumed random stream depends on which coefficients vanish.
SamplePath sample_fmfbm(double a, double b, Hurst h1, Hurst h2, const TimeGrid& grid, Rng& rng);

// Fast sampler for the uniform grid {0, step, ..., n*step}: circulant embedding
// of fractional Gaussian noise (Davies-Harte), followed by a cumulative sum.
// Agrees in law with FbmSampler on the same grid.
class CirculantFbmSampler {
public:
    CirculantFbmSampler(Hurst h, double step, std::size_t n);

    SamplePath sample(Rng& rng) const;
    const TimeGrid& grid() const noexcept { return grid_; }

private:
    Hurst hurst_;
    double step_;
    std::size_t n_;
    TimeGrid grid_;
    std::vector<double> sqrt_eigen_;  // sqrt(lambda_k / (2n)), k = 0..2n-1
};

}  // namespace tcfbm
