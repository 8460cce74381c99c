#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "tcfbm/timechange.hpp"
#include "tcfbm/types.hpp"

namespace tcfbm {

// How the second moment E[B^H(T_t)^2] enters a closed form.
//
// Published:    (t^alpha / Gamma(alpha+1))^{2H}, i.e. (E T_t)^{2H}, as printed in the
//               literature this toolkit checks.
// MomentOracle: E[(T_t)^{2H}] = t^{2H alpha} Gamma(2H+1) / Gamma(2H alpha + 1), obtained
//               by conditioning on the clock.
// The two agree only at H = 1/2; the Monte Carlo harness decides which one matches.
enum class FormulaVariant { Published, MomentOracle };

std::string_view to_string(FormulaVariant v) noexcept;

struct AsymptoticTerm {
    double coefficient;
    double exponent;  // power of t
};

// value == sum of coefficient * t^exponent over leading_terms.
struct AsymptoticValue {
    double value = 0.0;
    std::vector<AsymptoticTerm> leading_terms;
    // d of Corr ~ c(s) t^{-d}, i.e. minus the largest exponent; set for correlation forms.
    std::optional<double> dominant_decay_exponent;
};

struct CorrelationValue {
    double value;
    bool out_of_range;  // |value| > 1; the raw value is kept
};

struct LrdVerdict {
    bool holds;
    bool h_condition;         // H1 < H2
    bool exponent_condition;  // 0 < 2 alpha H1 - alpha H2 < 1
    std::optional<double> dominant_decay_exponent;  // 1 - alpha H2 when holds
    double mixture_exponent;        // 2 alpha H1 - alpha H2
    double term_a_decay_exponent;   // 1 + alpha H2 - 2 alpha H1
    double term_b_decay_exponent;   // 1 - alpha H2
};

// Var(L_t) = a^2 m_{H1}(t) + b^2 m_{H2}(t), with m the variant's second moment.
double variance_tc(const FmfBmParams& p, double t, FormulaVariant v);

// E[L_t L_s] for 0 <= s <= t via the stationary-increment identity
// (m(t) + m(s) - m(t-s)) / 2 per component. Throws DomainError when s > t.
double covariance_tc_ordered(const FmfBmParams& p, double s, double t, FormulaVariant v);

// Same, with the arguments put in order first.
double covariance_tc(const FmfBmParams& p, double s, double t, FormulaVariant v);

// Exact E[B(T_t) B(T_s)] = E[T_{min(s,t)}] = min(s,t)^alpha / Gamma(alpha+1).
double tc_bm_covariance_oracle(StableIndex alpha, double s, double t);

// Large-t expansion a^2 alpha s t^{2 alpha H1 - 1} / Gamma(alpha+1)^{2 H1} + (same for b, H2).
// Requires t > s.
AsymptoticValue covariance_asymptotic(const FmfBmParams& p, double s, double t);

// covariance_tc / sqrt(variance_tc(s) variance_tc(t)), all under one variant. Not clamped.
CorrelationValue correlation(const FmfBmParams& p, double s, double t, FormulaVariant v);

// Two-term large-t expansion of the correlation:
//   A: a^2 sqrt(alpha) s t^{2 alpha H1 - alpha H2 - 1} / (|b| Gamma(alpha+1)^{2H1-H2} sqrt(E L_s^2))
//   B: |b| sqrt(alpha) s t^{alpha H2 - 1} / (Gamma(alpha+1)^{H2} sqrt(E L_s^2))
// E L_s^2 comes from variance_tc under `variance_variant`. With b == 0 the single
// component reduction (B with H1 and |a|) is returned. Requires t > s > 0, and
// H1 < H2 when both coefficients are nonzero.
AsymptoticValue correlation_asymptotic(const FmfBmParams& p, double s, double t,
                                       FormulaVariant variance_variant = FormulaVariant::Published);

// Long-range dependence predicate: H1 < H2 and 0 < 2 alpha H1 - alpha H2 < 1.
LrdVerdict lrd_condition(const FmfBmParams& p);

// alpha -> 1 limit of the covariance: a^2 R_{H1}(s,t) + b^2 R_{H2}(s,t). Requires 0 <= s <= t.
double alpha1_limit_covariance(double a, double b, Hurst h1, Hurst h2, double s, double t);

// The various alpha -> 1 forms side by side. None is asserted as ground truth.
struct Alpha1Limits {
    double covariance;                  // alpha1_limit_covariance
    std::optional<double> asymptotic_covariance;  // covariance_asymptotic at alpha = 1, t > s
    double published_limit_covariance;  // a^2 s / 2 + b^2 s t^{2 H2 - 1}
    std::optional<double> asymptotic_correlation;        // correlation_asymptotic at alpha = 1
    std::optional<double> published_limit_correlation;  // needs b != 0
};

Alpha1Limits alpha1_limits(double a, double b, Hurst h1, Hurst h2, double s, double t);

// Corr(B^H_t, B^H_s) ~ s t^{H-1} / sqrt(E (B^H_s)^2) = s^{1-H} t^{H-1}. Requires s, t > 0.
AsymptoticValue fbm_corr_asymptotic(Hurst h, double s, double t);

}  // namespace tcfbm
