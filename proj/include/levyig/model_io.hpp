#pragma once

#include <string>

#include <json.hpp>

#include "levyig/measure.hpp"

namespace levyig {

/// Model specification document:
///   { "family": "gts"|"cts"|"vg"|"vg_reg"|"generic",
///     "sigma": number, "gamma": number | "martingale",
///     "params": { per-family keys } }
/// Unknown keys are rejected. The "generic" family takes the gts parameter
/// keys and routes evaluation through the generic (pure quadrature) path.
LevyModel model_from_json(const nlohmann::json& doc, const QuadratureConfig& q = {});
LevyModel load_model_file(const std::string& path, const QuadratureConfig& q = {});

}  // namespace levyig
