#include "tcfbm/cli/report_json.hpp"

#include <cmath>

namespace tcfbm {

using nlohmann::json;

json json_number(double x) {
    return std::isfinite(x) ? json(x) : json(nullptr);
}

void to_json(json& j, const MCEstimate& e) {
    j = json{{"value", json_number(e.value)}, {"std_error", json_number(e.std_error)}, {"n", e.n}};
}

void to_json(json& j, const Candidate& c) {
    j = json{{"label", c.label},
             {"value", json_number(c.value)},
             {"z_score", json_number(c.z_score)},
             {"within_4se", c.within_4se},
             {"oracle", c.oracle}};
}

void to_json(json& j, const ComparisonReport& r) {
    json verdicts = json::array();
    for (const auto& c : r.candidates) {
        verdicts.push_back({{"label", c.label}, {"within_4se", c.within_4se}});
    }
    j = json{{"quantity", r.quantity},
             {"mc", r.mc},
             {"candidates", r.candidates},
             {"verdicts", verdicts},
             {"oracles_pass", r.oracles_pass()}};
}

void to_json(json& j, const AsymptoticValue& v) {
    json terms = json::array();
    for (const auto& t : v.leading_terms) {
        terms.push_back({{"coefficient", json_number(t.coefficient)}, {"exponent", json_number(t.exponent)}});
    }
    j = json{{"value", json_number(v.value)}, {"terms", terms}};
    if (v.dominant_decay_exponent) {
        j["dominant_decay_exponent"] = json_number(*v.dominant_decay_exponent);
    }
}

void to_json(json& j, const LrdVerdict& v) {
    j = json{{"holds", v.holds},
             {"h_condition", v.h_condition},
             {"exponent_condition", v.exponent_condition},
             {"dominant_decay_exponent",
              v.dominant_decay_exponent ? json_number(*v.dominant_decay_exponent) : json(nullptr)},
             {"mixture_exponent", json_number(v.mixture_exponent)},
             {"term_a_decay_exponent", json_number(v.term_a_decay_exponent)},
             {"term_b_decay_exponent", json_number(v.term_b_decay_exponent)}};
}

void to_json(json& j, const DecayFit& f) {
    j = json{{"exponent_d", json_number(f.exponent_d)},
             {"prefactor_c", json_number(f.prefactor_c)},
             {"r_squared", json_number(f.r_squared)},
             {"window", json::array({json_number(f.t_min), json_number(f.t_max)})},
             {"n_points", f.n_points},
             {"n_dropped", f.n_dropped}};
}

}  // namespace tcfbm
