#include "tcfbm/theory.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tcfbm/error.hpp"
#include "tcfbm/gaussian.hpp"
#include "tcfbm/special.hpp"
#include "tcfbm/subordinator.hpp"

namespace tcfbm {

std::string_view to_string(FormulaVariant v) noexcept {
    switch (v) {
        case FormulaVariant::Published:
            return "paper";
        case FormulaVariant::MomentOracle:
            return "oracle";
    }
    return "unknown";
}

namespace {

// Second moment of B^H(T_x) under the chosen variant.
double second_moment(FormulaVariant v, StableIndex alpha, Hurst h, double x) {
    const double a = alpha.value();
    const double hv = h.value();
    if (v == FormulaVariant::Published) {
        return std::pow(x, 2.0 * a * hv) / std::pow(gamma_fn(a + 1.0), 2.0 * hv);
    }
    return inverse_moment_real(alpha, x, 2.0 * hv);
}

double component_covariance(FormulaVariant v, StableIndex alpha, Hurst h, double s, double t) {
    return (second_moment(v, alpha, h, t) + second_moment(v, alpha, h, s) - second_moment(v, alpha, h, t - s)) / 2.0;
}

void require_nonnegative(double s, double t) {
    if (!(s >= 0.0) || !(t >= 0.0)) {
        throw DomainError("times must be >= 0");
    }
}

}  // namespace

double variance_tc(const FmfBmParams& p, double t, FormulaVariant v) {
    require_nonnegative(t, t);
    return p.a * p.a * second_moment(v, p.alpha, p.h1, t) + p.b * p.b * second_moment(v, p.alpha, p.h2, t);
}

double covariance_tc_ordered(const FmfBmParams& p, double s, double t, FormulaVariant v) {
    require_nonnegative(s, t);
    if (s > t) {
        throw DomainError("covariance_tc_ordered expects s <= t");
    }
    return p.a * p.a * component_covariance(v, p.alpha, p.h1, s, t) +
           p.b * p.b * component_covariance(v, p.alpha, p.h2, s, t);
}

double covariance_tc(const FmfBmParams& p, double s, double t, FormulaVariant v) {
    return s <= t ? covariance_tc_ordered(p, s, t, v) : covariance_tc_ordered(p, t, s, v);
}

double tc_bm_covariance_oracle(StableIndex alpha, double s, double t) {
    require_nonnegative(s, t);
    const double a = alpha.value();
    return std::pow(std::min(s, t), a) / gamma_fn(a + 1.0);
}

AsymptoticValue covariance_asymptotic(const FmfBmParams& p, double s, double t) {
    if (!(s >= 0.0) || !(t > s)) {
        throw DomainError("covariance_asymptotic requires t > s >= 0");
    }
    const double a = p.alpha.value();
    const double g = gamma_fn(a + 1.0);
    AsymptoticValue out;
    auto add = [&](double coef, Hurst h) {
        if (coef == 0.0) {
            return;
        }
        const double hv = h.value();
        const AsymptoticTerm term{coef * coef * a * s / std::pow(g, 2.0 * hv), 2.0 * a * hv - 1.0};
        out.leading_terms.push_back(term);
        out.value += term.coefficient * std::pow(t, term.exponent);
    };
    add(p.a, p.h1);
    add(p.b, p.h2);
    return out;
}

CorrelationValue correlation(const FmfBmParams& p, double s, double t, FormulaVariant v) {
    if (!(s > 0.0) || !(t > 0.0)) {
        throw DomainError("correlation requires s, t > 0");
    }
    const double vs = variance_tc(p, s, v);
    const double vt = variance_tc(p, t, v);
    if (!(vs > 0.0) || !(vt > 0.0)) {
        throw DomainError("correlation undefined for zero variance");
    }
    const double value = covariance_tc(p, s, t, v) / std::sqrt(vs * vt);
    return {value, std::abs(value) > 1.0};
}

AsymptoticValue correlation_asymptotic(const FmfBmParams& p, double s, double t, FormulaVariant variance_variant) {
    if (!(s > 0.0) || !(t > s)) {
        throw DomainError("correlation_asymptotic requires t > s > 0");
    }
    const double a = p.alpha.value();
    const double g = gamma_fn(a + 1.0);
    const double root_var_s = std::sqrt(variance_tc(p, s, variance_variant));
    const double lead = std::sqrt(a) * s / root_var_s;

    AsymptoticValue out;
    auto add = [&](double coefficient, double exponent) {
        out.leading_terms.push_back({coefficient, exponent});
        out.value += coefficient * std::pow(t, exponent);
    };
    if (p.b == 0.0) {
        const double h1 = p.h1.value();
        add(std::abs(p.a) * lead / std::pow(g, h1), a * h1 - 1.0);
    } else {
        const double h1 = p.h1.value();
        const double h2 = p.h2.value();
        if (p.a != 0.0) {
            if (!(h1 < h2)) {
                throw DomainError("correlation_asymptotic requires H1 < H2 when a, b != 0");
            }
            add(p.a * p.a * lead / (std::abs(p.b) * std::pow(g, 2.0 * h1 - h2)), 2.0 * a * h1 - a * h2 - 1.0);
        }
        add(std::abs(p.b) * lead / std::pow(g, h2), a * h2 - 1.0);
    }
    double slowest = out.leading_terms.front().exponent;
    for (const auto& term : out.leading_terms) {
        slowest = std::max(slowest, term.exponent);
    }
    out.dominant_decay_exponent = -slowest;
    return out;
}

LrdVerdict lrd_condition(const FmfBmParams& p) {
    const double a = p.alpha.value();
    const double h1 = p.h1.value();
    const double h2 = p.h2.value();
    LrdVerdict v{};
    v.mixture_exponent = 2.0 * a * h1 - a * h2;
    v.h_condition = h1 < h2;
    v.exponent_condition = v.mixture_exponent > 0.0 && v.mixture_exponent < 1.0;
    v.holds = v.h_condition && v.exponent_condition;
    v.term_a_decay_exponent = 1.0 - v.mixture_exponent;
    v.term_b_decay_exponent = 1.0 - a * h2;
    if (v.holds) {
        v.dominant_decay_exponent = v.term_b_decay_exponent;
    }
    return v;
}

double alpha1_limit_covariance(double a, double b, Hurst h1, Hurst h2, double s, double t) {
    require_nonnegative(s, t);
    if (s > t) {
        throw DomainError("alpha1_limit_covariance expects s <= t");
    }
    return a * a * fbm_covariance(h1, s, t) + b * b * fbm_covariance(h2, s, t);
}

Alpha1Limits alpha1_limits(double a, double b, Hurst h1, Hurst h2, double s, double t) {
    const FmfBmParams p(a, b, h1, h2, StableIndex(1.0));
    Alpha1Limits out{};
    out.covariance = alpha1_limit_covariance(a, b, h1, h2, s, t);
    out.published_limit_covariance = a * a * s / 2.0 + b * b * s * std::pow(t, 2.0 * h2.value() - 1.0);
    if (t > s) {
        out.asymptotic_covariance = covariance_asymptotic(p, s, t).value;
        if (s > 0.0 && (b == 0.0 || a == 0.0 || h1.value() < h2.value())) {
            out.asymptotic_correlation = correlation_asymptotic(p, s, t).value;
        }
    }
    if (b != 0.0 && s > 0.0) {
        const double hv = h2.value();
        const double root_var_s = std::sqrt(a * a * std::pow(s, 2.0 * h1.value()) + b * b * std::pow(s, 2.0 * hv));
        out.published_limit_correlation = a * a * s * std::pow(t, -hv) / (2.0 * std::abs(b) * root_var_s) +
                                            std::abs(b) * s * std::pow(t, hv - 1.0) / root_var_s;
    }
    return out;
}

AsymptoticValue fbm_corr_asymptotic(Hurst h, double s, double t) {
    if (!(s > 0.0) || !(t > 0.0)) {
        throw DomainError("fbm_corr_asymptotic requires s, t > 0");
    }
    const double hv = h.value();
    AsymptoticValue out;
    out.leading_terms.push_back({std::pow(s, 1.0 - hv), hv - 1.0});
    out.value = out.leading_terms.front().coefficient * std::pow(t, hv - 1.0);
    out.dominant_decay_exponent = 1.0 - hv;
    return out;
}

}  // namespace tcfbm
