#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "ssdl/metrics.hpp"
#include "ssdl/model.hpp"

namespace ssdl {

// Model document: per subgroup the conditions (by column name), n, mean,
// std; plus default mean/std and total code lengths.
nlohmann::json model_to_json(const SubgroupList& model, const Dataset& dataset,
                             const std::string& algorithm);

// Rebuilds descriptions against `dataset` and recomputes usage covers and
// stats (first-match order).
SubgroupList model_from_json(const nlohmann::json& doc, const Dataset& dataset);

nlohmann::json report_to_json(const EvaluationReport& report);

// Human-readable listing: one row per subgroup with description, n, mean,
// std and overlap with earlier subgroups.
std::string model_table(const SubgroupList& model, const Dataset& dataset);

}  // namespace ssdl
