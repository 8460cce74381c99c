#include <doctest.h>

#include <cmath>
#include <vector>

#include "tcfbm/error.hpp"
#include "tcfbm/gaussian.hpp"
#include "tcfbm/montecarlo.hpp"
#include "tcfbm/theory.hpp"

using namespace tcfbm;
using doctest::Approx;

namespace {

FmfBmParams mixed(double a, double b, double h1, double h2, double alpha) {
    return FmfBmParams(a, b, Hurst(h1), Hurst(h2), StableIndex(alpha));
}

bool within(const MCEstimate& e, double target) { return std::abs(e.value - target) <= kZThreshold * e.std_error; }

}  // namespace

TEST_CASE("ensembles are deterministic and independent of thread count") {
    const auto p = mixed(1, 1, 0.5, 0.7, 0.8);
    const TimeGrid grid = TimeGrid::linear(0.0, 1.0, 11);
    const auto one = generate_ensemble(p, grid, 1, 1e-3, 42);
    const auto again = generate_ensemble(p, grid, 1, 1e-3, 42);
    CHECK(one.path(0) == again.path(0));

    const auto serial = generate_ensemble(p, grid, 64, 1e-3, 7, {.threads = 1});
    const auto parallel = generate_ensemble(p, grid, 64, 1e-3, 7, {.threads = 5});
    for (std::size_t i = 0; i < 64; ++i) {
        CHECK(serial.path(i) == parallel.path(i));
    }
    CHECK_FALSE(serial.path(0) == serial.path(1));

    Rng rng = substream(7, 3);
    CHECK(serial.path(3) == sample_time_changed_fmfbm(p, grid, 1e-3, rng));

    CHECK_THROWS_AS(generate_ensemble(p, grid, 0, 1e-3, 7), ParameterError);
    CHECK_THROWS_AS(generate_ensemble(p, grid, 4, 1e-9, 7, {.threads = 2, .max_points = 1000}), ResourceError);
}

TEST_CASE("Brownian ensemble variance") {
    const auto ens = generate_ensemble(mixed(1, 0, 0.5, 0.7, 1.0), TimeGrid({1.0}), 100000, 1e-3, 5);
    CHECK(within(empirical_cross_moment(ens, 0, 0), 1.0));
    CHECK(within(empirical_moment(ens, 0, 1.0).estimate, 0.0));
}

TEST_CASE("moment estimators") {
    Ensemble constant(TimeGrid({0.5, 1.0}), 10, 0);
    for (std::size_t i = 0; i < 10; ++i) {
        constant.row(i)[0] = 2.5;
        constant.row(i)[1] = -1.5;
    }
    const auto m = empirical_moment(constant, 0, 1.0);
    CHECK(m.estimate.value == 2.5);
    CHECK(m.estimate.std_error == 0.0);
    CHECK(m.estimate.n == 10);
    CHECK(m.convention == MomentConvention::Integer);
    CHECK(empirical_moment(constant, 1, 3.0).estimate.value == Approx(-3.375));
    const auto frac = empirical_moment(constant, 1, 0.5);
    CHECK(frac.convention == MomentConvention::Absolute);
    CHECK(frac.estimate.value == Approx(std::sqrt(1.5)));
    CHECK(empirical_cross_moment(constant, 0, 1).value == Approx(-3.75));
    CHECK(empirical_cross_moment(constant, 1, 1).value == empirical_moment(constant, 1, 2.0).estimate.value);
    CHECK_THROWS(empirical_moment(constant, 0, 0.0));

    Ensemble single(TimeGrid({1.0}), 1, 0);
    CHECK_THROWS_AS(empirical_moment(single, 0, 1.0), PreconditionError);

    const std::vector<double> x{1.0, 2.0, 3.0, 4.0};
    const auto e = estimate_mean(x);
    CHECK(e.value == 2.5);
    CHECK(e.std_error == Approx(std::sqrt(5.0 / 3.0 / 4.0)));

    const auto clock = generate_inverse_subordinator_ensemble(StableIndex(0.5), TimeGrid({1.0}), 50000, 1e-3, 6);
    CHECK(within(empirical_moment(clock, 0, 1.0).estimate, 1.1283791670955126));
}

TEST_CASE("cross moments against exact covariances") {
    const TimeGrid grid({1.0, 2.0});
    const auto bm = generate_ensemble(mixed(1, 0, 0.5, 0.7, 0.6), grid, 100000, 1e-3, 8);
    CHECK(within(empirical_cross_moment(bm, 0, 1), 1.1191749540701223));

    const auto mix = generate_ensemble(mixed(1, 1, 0.3, 0.7, 1.0), grid, 100000, 1e-3, 9);
    CHECK(within(empirical_cross_moment(mix, 0, 1), 2.0773661940280933));
}

TEST_CASE("alpha = 1 sweep of the cross-moment estimator") {
    struct Case {
        double a, b, h1, h2, s, t;
    };
    const Case cases[] = {
        {1.0, 0.5, 0.2, 0.8, 0.5, 1.5},  {0.3, 2.0, 0.45, 0.55, 1.0, 3.0}, {-1.0, 1.0, 0.7, 0.9, 2.0, 2.5},
        {2.0, 0.0, 0.35, 0.6, 0.1, 1.0}, {0.0, 1.2, 0.5, 0.15, 1.0, 1.2},
    };
    std::uint64_t seed = 100;
    for (const auto& c : cases) {
        const auto p = mixed(c.a, c.b, c.h1, c.h2, 1.0);
        const auto ens = generate_ensemble(p, TimeGrid({c.s, c.t}), 20000, 1e-3, seed++);
        const double exact = c.a * c.a * fbm_covariance(Hurst(c.h1), c.s, c.t) + c.b * c.b * fbm_covariance(Hurst(c.h2), c.s, c.t);
        CHECK(within(empirical_cross_moment(ens, 0, 1), exact));
    }
}

TEST_CASE("empirical correlation") {
    const auto bm = generate_ensemble(mixed(1, 0, 0.5, 0.7, 1.0), TimeGrid({1.0, 4.0}), 20000, 1e-3, 10);
    const auto c = empirical_correlation(bm, 0, 1);
    CHECK(c.std_error > 0.0);
    CHECK(within(c, 0.5));
    const auto diag = empirical_correlation(bm, 1, 1);
    CHECK(diag.value == 1.0);
    CHECK(diag.std_error == 0.0);
    CHECK(empirical_correlation(bm, 0, 1).value == c.value);
    CHECK(empirical_correlation(bm, 0, 1).std_error == c.std_error);

    const auto fbm = generate_ensemble(mixed(0, 1, 0.5, 0.7, 1.0), TimeGrid({1.0, 2.0}), 20000, 1e-3, 11);
    CHECK(within(empirical_correlation(fbm, 0, 1), 0.81225239635623552));

    const auto zero = generate_ensemble(mixed(1, 0, 0.5, 0.7, 0.8), TimeGrid({0.0, 1.0}), 100, 1e-3, 12);
    CHECK_THROWS_AS(empirical_correlation(zero, 0, 1), DomainError);
}

TEST_CASE("standard error scales as one over root n") {
    const auto p = mixed(1, 1, 0.5, 0.7, 0.8);
    const TimeGrid grid({1.0});
    for (std::uint64_t seed : {20, 21, 22}) {
        const auto small = generate_ensemble(p, grid, 5000, 1e-3, seed);
        const auto large = generate_ensemble(p, grid, 10000, 1e-3, seed + 50);
        const double ratio = empirical_moment(large, 0, 1.0).estimate.std_error /
                             empirical_moment(small, 0, 1.0).estimate.std_error;
        CHECK(std::abs(ratio * std::sqrt(2.0) - 1.0) < 0.2);
    }
}

TEST_CASE("comparison reports") {
    ComparisonReport r{"x", {1.0, 0.1, 100}, {}};
    r.add_candidate("near", 1.2, true);
    r.add_candidate("far", 2.0, false);
    CHECK(r.candidate("near").z_score == Approx(-2.0));
    CHECK(r.candidate("near").within_4se);
    CHECK_FALSE(r.candidate("far").within_4se);
    CHECK(r.oracles_pass());
    r.add_candidate("bad oracle", 0.0, true);
    CHECK_FALSE(r.oracles_pass());

    ComparisonReport exact{"y", {1.0, 0.0, 100}, {}};
    exact.add_candidate("same", 1.0, true);
    exact.add_candidate("other", 1.5, false);
    CHECK(exact.candidate("same").z_score == 0.0);
    CHECK(std::isinf(exact.candidate("other").z_score));
}

TEST_CASE("Laplace check") {
    const std::vector<double> u{0.0, 1.0};
    const auto reports = laplace_check(StableIndex(0.7), u, 200000, 30);
    REQUIRE(reports.size() == 2);
    CHECK(reports[0].mc.value == 1.0);
    CHECK(reports[0].candidates[0].z_score == 0.0);
    CHECK(reports[0].oracles_pass());
    CHECK(reports[1].candidates[0].value == Approx(0.36787944117144232));
    CHECK(reports[1].oracles_pass());
    CHECK_THROWS(laplace_check(StableIndex(0.7), u, 10, 30));
}

TEST_CASE("inverse moment comparison") {
    const std::vector<double> orders{1.0, 1.4};
    const auto reports = compare_inverse_moments(StableIndex(0.5), 1.0, orders, 50000, 1e-3, 31);
    REQUIRE(reports.size() == 2);
    CHECK(reports[0].candidates[0].oracle);
    CHECK(reports[0].oracles_pass());
    CHECK_FALSE(reports[1].candidates[0].oracle);
    CHECK(reports[1].candidates[0].value == Approx(1.3670662493152458));
}

TEST_CASE("covariance comparison") {
    const auto bm = compare_covariance(mixed(1, 0, 0.5, 0.7, 0.6), 1.0, 2.0, 100000, 1e-3, 32);
    CHECK(bm.candidate("tc_bm_oracle").value == Approx(1.1191749540701223));
    CHECK(bm.candidate("tc_bm_oracle").oracle);
    CHECK(bm.oracles_pass());
    CHECK(bm.candidate("paper").value == Approx(0.8481760093537991));
    MESSAGE("published covariance z-score at alpha 0.6: " << bm.candidate("paper").z_score);

    const auto at1 = compare_covariance(mixed(1, 1, 0.3, 0.7, 1.0), 1.0, 2.0, 20000, 1e-3, 33);
    CHECK(at1.candidate("paper").oracle);
    CHECK(at1.candidate("paper").value == alpha1_limit_covariance(1, 1, Hurst(0.3), Hurst(0.7), 1.0, 2.0));
    CHECK(at1.oracles_pass());

    const auto diag = compare_covariance(mixed(1, 1, 0.3, 0.7, 0.5), 2.0, 2.0, 1000, 1e-3, 34);
    CHECK(diag.candidate("paper").value == variance_tc(mixed(1, 1, 0.3, 0.7, 0.5), 2.0, FormulaVariant::Published));
    CHECK_THROWS(compare_covariance(mixed(1, 1, 0.3, 0.7, 0.5), 1.0, 2.0, 10, 1e-3, 34));
}

TEST_CASE("decay fitter") {
    std::vector<double> t;
    std::vector<MCEstimate> corr;
    for (double x = 10.0; x <= 1000.0 * (1 + 1e-12); x *= std::pow(10.0, 0.1)) {
        t.push_back(x);
        corr.push_back({2.5 * std::pow(x, -0.4), 0.01, 100});
    }
    // keep the synthetic values inside [-1, 1] so clamping stays out of the way
    for (auto& c : corr) c.value /= 2.5;
    const auto fit = fit_decay_exponent(1.0, t, corr);
    CHECK(fit.exponent_d == Approx(0.4).epsilon(1e-9));
    CHECK(fit.prefactor_c == Approx(1.0).epsilon(1e-9));
    CHECK(fit.r_squared == Approx(1.0).epsilon(1e-9));
    CHECK(fit.n_points == t.size());
    CHECK(fit.t_min == t.front());
    CHECK(fit.t_max == t.back());

    std::vector<MCEstimate> flat(t.size(), MCEstimate{0.3, 0.01, 100});
    CHECK(std::abs(fit_decay_exponent(1.0, t, flat).exponent_d) < 1e-12);

    auto noisy = corr;
    noisy[2].value = -0.05;
    noisy[5].value = 0.0;
    const auto dropped = fit_decay_exponent(1.0, t, noisy);
    CHECK(dropped.n_dropped == 2);
    CHECK(dropped.n_points == t.size() - 2);
    CHECK(dropped.exponent_d == Approx(0.4).epsilon(1e-9));

    const std::vector<double> t3{1.0, 2.0, 3.0};
    const std::vector<MCEstimate> two_good{{0.5, 0, 1}, {-0.1, 0, 1}, {0.2, 0, 1}};
    CHECK_THROWS_AS(fit_decay_exponent(1.0, t3, two_good), FitError);
}

TEST_CASE("theory decay exponent") {
    CHECK(*theory_decay_exponent(mixed(0, 1, 0.3, 0.7, 0.8)) == Approx(0.44));
    CHECK(*theory_decay_exponent(mixed(1, 0, 0.3, 0.7, 0.8)) == Approx(1 - 0.24));
    CHECK(*theory_decay_exponent(mixed(1, 1, 0.3, 0.7, 0.5)) == Approx(0.65));
    CHECK_FALSE(theory_decay_exponent(mixed(1, 1, 0.7, 0.3, 0.5)));
}

TEST_CASE("small decay scan") {
    const auto scan = run_decay_scan(mixed(0, 1, 0.5, 0.7, 1.0), 1.0, TimeGrid::log_spaced(2.0, 20.0, 6), 4000, 1e-2, 40);
    CHECK(scan.t_values.size() == 6);
    CHECK(scan.correlations.size() == 6);
    // alpha = 1: exact fBm, correlation decays like t^{-(1-H)} = t^{-0.3} asymptotically
    CHECK(scan.fit.exponent_d > 0.1);
    CHECK(scan.fit.exponent_d < 0.5);
}
