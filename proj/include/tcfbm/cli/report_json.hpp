#pragma once

#include <nlohmann/json.hpp>

#include "tcfbm/montecarlo.hpp"
#include "tcfbm/theory.hpp"

namespace tcfbm {

// Version of every JSON document the CLI writes.
inline constexpr int kSchemaVersion = 1;

// Non-finite doubles become null.
nlohmann::json json_number(double x);

void to_json(nlohmann::json& j, const MCEstimate& e);
void to_json(nlohmann::json& j, const Candidate& c);
void to_json(nlohmann::json& j, const ComparisonReport& r);
void to_json(nlohmann::json& j, const AsymptoticValue& v);
void to_json(nlohmann::json& j, const LrdVerdict& v);
void to_json(nlohmann::json& j, const DecayFit& f);

}  // namespace tcfbm
