#include "tcfbm/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <utility>

#include <unsupported/Eigen/FFT>

#include "tcfbm/error.hpp"

namespace tcfbm {

double fbm_covariance(Hurst h, double s, double t) {
    if (s < 0.0 || t < 0.0) {
        throw ParameterError("fbm_covariance requires s, t >= 0");
    }
    const double two_h = 2.0 * h.value();
    return 0.5 * (std::pow(s, two_h) + std::pow(t, two_h) - std::pow(std::abs(t - s), two_h));
}

FbmSampler::FbmSampler(Hurst h, TimeGrid grid) : hurst_(h), grid_(std::move(grid)) {
    offset_ = (!grid_.empty() && grid_.front() == 0.0) ? 1 : 0;
    const auto m = static_cast<Eigen::Index>(grid_.size() - offset_);
    if (m == 0) {
        return;
    }
    Eigen::MatrixXd cov(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j <= i; ++j) {
            const double v = fbm_covariance(h, grid_[offset_ + i], grid_[offset_ + j]);
            cov(i, j) = v;
            cov(j, i) = v;
        }
    }
    Eigen::LLT<Eigen::MatrixXd> llt(cov);
    if (llt.info() != Eigen::Success) {
        const double eps = 1e-12 * cov.diagonal().maxCoeff();
        cov.diagonal().array() += eps;
        llt.compute(cov);
        jittered_ = true;
        if (llt.info() != Eigen::Success) {
            throw NumericalError("fBm covariance factorization failed after jitter", grid_.vector());
        }
    }
    lower_ = llt.matrixL();
}

void FbmSampler::sample_into(Rng& rng, std::vector<double>& out) const {
    out.assign(grid_.size(), 0.0);
    const Eigen::Index m = lower_.rows();
    if (m == 0) {
        return;
    }
    std::normal_distribution<double> normal;
    Eigen::VectorXd z(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        z[i] = normal(rng);
    }
    Eigen::Map<Eigen::VectorXd> x(out.data() + offset_, m);
    x.noalias() = lower_.triangularView<Eigen::Lower>() * z;
}

SamplePath FbmSampler::sample(Rng& rng) const {
    std::vector<double> values;
    sample_into(rng, values);
    return SamplePath(grid_, std::move(values));
}

SamplePath sample_fbm_at_times(Hurst h, const TimeGrid& grid, Rng& rng) {
    return FbmSampler(h, grid).sample(rng);
}

SamplePath sample_fmfbm(double a, double b, Hurst h1, Hurst h2, const TimeGrid& grid, Rng& rng) {
    if (a == 0.0 && b == 0.0) {
        throw ParameterError("fmfBm requires (a,b) != (0,0)");
    }
    std::vector<double> out(grid.size(), 0.0);
    std::vector<double> component;
    if (a != 0.0) {
        FbmSampler(h1, grid).sample_into(rng, component);
        for (std::size_t i = 0; i < out.size(); ++i) {
            out[i] += a * component[i];
        }
    }
    if (b != 0.0) {
        FbmSampler(h2, grid).sample_into(rng, component);
        for (std::size_t i = 0; i < out.size(); ++i) {
            out[i] += b * component[i];
        }
    }
    return SamplePath(grid, std::move(out));
}

namespace {

// Autocovariance of fractional Gaussian noise with unit step at lag k.
double fgn_autocovariance(double two_h, double k) {
    return 0.5 * (std::pow(k + 1.0, two_h) - 2.0 * std::pow(k, two_h) + std::pow(std::abs(k - 1.0), two_h));
}

}  // namespace

CirculantFbmSampler::CirculantFbmSampler(Hurst h, double step, std::size_t n)
    : hurst_(h), step_(step), n_(n) {
    if (!(step > 0.0) || n == 0) {
        throw ParameterError("circulant sampler needs step > 0 and n >= 1");
    }
    std::vector<double> t(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        t[i] = step * static_cast<double>(i);
    }
    grid_ = TimeGrid(std::move(t));

    const double two_h = 2.0 * h.value();
    const std::size_t m = 2 * n;
    std::vector<std::complex<double>> row(m);
    for (std::size_t k = 0; k <= n; ++k) {
        row[k] = fgn_autocovariance(two_h, static_cast<double>(k));
    }
    for (std::size_t k = n + 1; k < m; ++k) {
        row[k] = row[m - k];
    }
    Eigen::FFT<double> fft;
    std::vector<std::complex<double>> eig;
    fft.fwd(eig, row);

    double max_eig = 0.0;
    for (const auto& e : eig) {
        max_eig = std::max(max_eig, e.real());
    }
    sqrt_eigen_.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
        double lambda = eig[k].real();
        if (lambda < 0.0) {
            if (lambda < -1e-10 * max_eig) {
                throw NumericalError("circulant embedding is not nonnegative definite", grid_.vector());
            }
            lambda = 0.0;
        }
        sqrt_eigen_[k] = std::sqrt(lambda / static_cast<double>(m));
    }
}

SamplePath CirculantFbmSampler::sample(Rng& rng) const {
    const std::size_t m = 2 * n_;
    std::normal_distribution<double> normal;
    std::vector<std::complex<double>> w(m);
    w[0] = sqrt_eigen_[0] * normal(rng);
    w[n_] = sqrt_eigen_[n_] * normal(rng);
    for (std::size_t k = 1; k < n_; ++k) {
        const double scale = sqrt_eigen_[k] * std::sqrt(0.5);
        const double re = normal(rng);
        const double im = normal(rng);
        w[k] = {scale * re, scale * im};
        w[m - k] = std::conj(w[k]);
    }
    Eigen::FFT<double> fft;
    std::vector<std::complex<double>> noise;
    fft.fwd(noise, w);

    const double scale = std::pow(step_, hurst_.value());
    std::vector<double> values(n_ + 1, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
        values[i + 1] = values[i] + scale * noise[i].real();
    }
    return SamplePath(grid_, std::move(values));
}

}  // namespace tcfbm
