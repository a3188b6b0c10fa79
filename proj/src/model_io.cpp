#include "levyig/model_io.hpp"

#include <fstream>
#include <set>

#include "levyig/levy_core.hpp"

namespace levyig {

namespace {

using nlohmann::json;

double require_number(const json& j, const std::string& key) {
    if (!j.contains(key)) throw config_error("model file: missing key '" + key + "'");
    if (!j.at(key).is_number())
        throw config_error("model file: key '" + key + "' must be a number");
    return j.at(key).get<double>();
}

double number_or(const json& j, const std::string& key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number())
        throw config_error("model file: key '" + key + "' must be a number");
    return j.at(key).get<double>();
}

void reject_unknown(const json& j, const std::set<std::string>& allowed,
                    const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw config_error("model file: unknown key '" + it.key() + "' in " + where);
}

GtsParams gts_params_from(const json& params) {
    reject_unknown(params,
                   {"c_plus", "c_minus", "a_plus", "a_minus", "lambda_plus", "lambda_minus"},
                   "params");
    GtsParams p;
    p.c_plus = number_or(params, "c_plus", 0.0);
    p.c_minus = number_or(params, "c_minus", 0.0);
    if (p.c_plus > 0.0) {
        p.a_plus = require_number(params, "a_plus");
        p.lambda_plus = require_number(params, "lambda_plus");
    } else {
        p.a_plus = number_or(params, "a_plus", 0.5);
        p.lambda_plus = number_or(params, "lambda_plus", 1.0);
    }
    if (p.c_minus > 0.0) {
        p.a_minus = require_number(params, "a_minus");
        p.lambda_minus = require_number(params, "lambda_minus");
    } else {
        p.a_minus = number_or(params, "a_minus", 0.5);
        p.lambda_minus = number_or(params, "lambda_minus", 1.0);
    }
    return p;
}

}  // namespace

LevyModel model_from_json(const json& doc, const QuadratureConfig& q) {
    if (!doc.is_object()) throw config_error("model file: document must be a JSON object");
    reject_unknown(doc, {"family", "sigma", "gamma", "params"}, "the model document");
    if (!doc.contains("family") || !doc.at("family").is_string())
        throw config_error("model file: 'family' must be one of gts|cts|vg|vg_reg|generic");
    const std::string family = doc.at("family").get<std::string>();
    const double sigma = require_number(doc, "sigma");
    const json params = doc.contains("params") ? doc.at("params") : json::object();
    if (!params.is_object()) throw config_error("model file: 'params' must be an object");

    LevyMeasure measure = LevyMeasure::zero();
    if (family == "gts") {
        measure = LevyMeasure::gts(gts_params_from(params));
    } else if (family == "cts") {
        reject_unknown(params, {"c", "a", "lambda_plus", "lambda_minus"}, "params");
        measure = LevyMeasure::cts(require_number(params, "c"), require_number(params, "a"),
                                   require_number(params, "lambda_plus"),
                                   require_number(params, "lambda_minus"));
    } else if (family == "vg") {
        reject_unknown(params, {"c", "lambda_plus", "lambda_minus"}, "params");
        measure = LevyMeasure::vg(require_number(params, "c"),
                                  require_number(params, "lambda_plus"),
                                  require_number(params, "lambda_minus"));
    } else if (family == "vg_reg") {
        reject_unknown(params, {"c", "a", "lambda_plus", "lambda_minus"}, "params");
        measure = LevyMeasure::vg_regularized(require_number(params, "c"),
                                              require_number(params, "a"),
                                              require_number(params, "lambda_plus"),
                                              require_number(params, "lambda_minus"));
    } else if (family == "generic") {
        measure = generic_from_shape(gts_params_from(params));
    } else {
        throw config_error("model file: unknown family '" + family + "'");
    }

    double gamma = 0.0;
    if (!doc.contains("gamma")) throw config_error("model file: missing key 'gamma'");
    if (doc.at("gamma").is_string()) {
        if (doc.at("gamma").get<std::string>() != "martingale")
            throw config_error("model file: 'gamma' must be a number or \"martingale\"");
        gamma = martingale_drift(sigma, measure, q);
    } else if (doc.at("gamma").is_number()) {
        gamma = doc.at("gamma").get<double>();
    } else {
        throw config_error("model file: 'gamma' must be a number or \"martingale\"");
    }
    return LevyModel(sigma, gamma, measure);
}

LevyModel load_model_file(const std::string& path, const QuadratureConfig& q) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open model file: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw config_error("model file " + path + ": " + e.what());
    }
    return model_from_json(doc, q);
}

}  // namespace levyig
