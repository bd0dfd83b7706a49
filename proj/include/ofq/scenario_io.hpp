#pragma once

// Scenario / sweep file ingestion and emission. Files are JSON; rates are
// packets per second, delays in reports are seconds. Unknown keys are
// rejected with the JSON path so unit mistakes cannot slip through silently.

#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <variant>

#include <json.hpp>

#include "ofq/error.hpp"
#include "ofq/network.hpp"
#include "ofq/sweep.hpp"

namespace ofq {

using ParsedScenarioFile = std::variant<NetworkScenario, SweepSpec>;

namespace detail {

inline std::pair<std::size_t, std::size_t> line_column_of(const std::string& text,
                                                          std::size_t byte) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

inline void reject_unknown_keys(const nlohmann::json& obj, const std::set<std::string>& allowed,
                                const std::string& path) {
    for (const auto& item : obj.items()) {
        if (!allowed.contains(item.key())) {
            throw ParseError("unknown key '" + item.key() + "' at " + path);
        }
    }
}

inline double require_number(const nlohmann::json& obj, const std::string& key,
                             const std::string& path) {
    if (!obj.contains(key)) {
        throw ParseError("missing key '" + key + "' at " + path);
    }
    if (!obj.at(key).is_number()) {
        throw ParseError("key '" + key + "' at " + path + " must be a number");
    }
    return obj.at(key).get<double>();
}

inline double number_or(const nlohmann::json& obj, const std::string& key,
                        const std::string& path, double fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj.at(key).is_number()) {
        throw ParseError("key '" + key + "' at " + path + " must be a number");
    }
    return obj.at(key).get<double>();
}

inline std::string string_or(const nlohmann::json& obj, const std::string& key,
                             const std::string& path, const std::string& fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj.at(key).is_string()) {
        throw ParseError("key '" + key + "' at " + path + " must be a string");
    }
    return obj.at(key).get<std::string>();
}

inline NetworkScenario scenario_from_json(const nlohmann::json& node, const std::string& path) {
    if (!node.is_object()) {
        throw ParseError("expected an object at " + path);
    }
    reject_unknown_keys(node, {"switches", "controller"}, path);
    if (!node.contains("switches") || !node.at("switches").is_array()) {
        throw ParseError("'switches' at " + path + " must be an array");
    }
    if (!node.contains("controller") || !node.at("controller").is_object()) {
        throw ParseError("'controller' at " + path + " must be an object");
    }

    NetworkScenario scenario;
    std::size_t index = 0;
    for (const auto& sw_node : node.at("switches")) {
        const std::string sw_path = path + "/switches/" + std::to_string(index);
        if (!sw_node.is_object()) {
            throw ParseError("expected an object at " + sw_path);
        }
        reject_unknown_keys(sw_node, {"lambda", "p_packet_in", "mu1", "mu2", "count"}, sw_path);
        SwitchParams sw;
        sw.lambda = require_number(sw_node, "lambda", sw_path);
        sw.service.p_packet_in = require_number(sw_node, "p_packet_in", sw_path);
        sw.service.mu1 = require_number(sw_node, "mu1", sw_path);
        sw.service.mu2 = require_number(sw_node, "mu2", sw_path);
        const double count = number_or(sw_node, "count", sw_path, 1.0);
        if (count < 1.0 || count != std::floor(count)) {
            throw ParseError("key 'count' at " + sw_path + " must be a positive integer");
        }
        for (std::size_t c = 0; c < static_cast<std::size_t>(count); ++c) {
            scenario.switches.push_back(sw);
        }
        ++index;
    }
    const std::string ctrl_path = path + "/controller";
    reject_unknown_keys(node.at("controller"), {"mu_c"}, ctrl_path);
    scenario.controller.mu_c = require_number(node.at("controller"), "mu_c", ctrl_path);
    return scenario;
}

inline SweepSpec sweep_from_json(const nlohmann::json& root) {
    SweepSpec spec;
    bool have_base = false;

    const std::string preset_name = string_or(root, "preset", "/", "custom");
    const auto preset = preset_from_name(preset_name);
    if (!preset.has_value()) {
        throw ParseError("unknown preset '" + preset_name + "' at /preset");
    }
    if (*preset != SweepPreset::custom) {
        spec = preset_spec(*preset);
        have_base = true;
    }
    if (root.contains("scenario")) {
        spec.base = scenario_from_json(root.at("scenario"), "/scenario");
        have_base = true;
    }
    if (!have_base) {
        throw ParseError("sweep file needs a 'scenario' block or a 'preset'");
    }

    if (root.contains("sweep")) {
        const nlohmann::json& node = root.at("sweep");
        if (!node.is_object()) {
            throw ParseError("'sweep' must be an object");
        }
        reject_unknown_keys(node,
                            {"variable", "start", "stop", "step", "lambda_series", "outputs",
                             "sim_packets", "sim_warmup", "seed"},
                            "/sweep");
        const std::string variable = string_or(node, "variable", "/sweep",
                                               std::string(to_string(spec.variable)));
        if (variable == "p_packet_in") {
            spec.variable = SweptVariable::p_packet_in;
        } else if (variable == "n_switches") {
            spec.variable = SweptVariable::n_switches;
        } else if (variable == "lambda") {
            spec.variable = SweptVariable::lambda;
        } else {
            throw ParseError("unknown swept variable '" + variable + "' at /sweep/variable");
        }
        spec.start = number_or(node, "start", "/sweep", spec.start);
        spec.stop = number_or(node, "stop", "/sweep", spec.stop);
        spec.step = number_or(node, "step", "/sweep", spec.step);
        if (node.contains("lambda_series")) {
            if (!node.at("lambda_series").is_array()) {
                throw ParseError("'lambda_series' at /sweep must be an array of numbers");
            }
            spec.lambda_series.clear();
            for (const auto& v : node.at("lambda_series")) {
                if (!v.is_number()) {
                    throw ParseError("'lambda_series' at /sweep must be an array of numbers");
                }
                spec.lambda_series.push_back(v.get<double>());
            }
        }
        const std::string outputs = string_or(node, "outputs", "/sweep",
                                              std::string(to_string(spec.outputs)));
        if (outputs == "analytic") {
            spec.outputs = SweepOutputs::analytic;
        } else if (outputs == "simulate") {
            spec.outputs = SweepOutputs::simulate;
        } else if (outputs == "both") {
            spec.outputs = SweepOutputs::both;
        } else {
            throw ParseError("unknown outputs mode '" + outputs + "' at /sweep/outputs");
        }
        const double packets = number_or(node, "sim_packets", "/sweep",
                                         static_cast<double>(spec.sim_packets));
        if (packets < 1.0 || packets != std::floor(packets)) {
            throw ParseError("'sim_packets' at /sweep must be a positive integer");
        }
        spec.sim_packets = static_cast<std::uint64_t>(packets);
        if (node.contains("sim_warmup")) {
            const double w = require_number(node, "sim_warmup", "/sweep");
            if (w < 0.0 || w != std::floor(w)) {
                throw ParseError("'sim_warmup' at /sweep must be a nonnegative integer");
            }
            spec.sim_warmup = static_cast<std::uint64_t>(w);
        }
        const double seed = number_or(node, "seed", "/sweep", static_cast<double>(spec.seed));
        if (seed < 0.0 || seed != std::floor(seed)) {
            throw ParseError("'seed' at /sweep must be a nonnegative integer");
        }
        spec.seed = static_cast<std::uint64_t>(seed);
    }

    try {
        spec.validate();
    } catch (const InvalidParameterError& e) {
        throw ParseError(std::string("invalid sweep: ") + e.what());
    }
    // Fixed (non-swept) structural defects are parse-time failures; stability
    // is judged per sweep point.
    for (const auto& violation : validate_scenario(spec.base)) {
        const bool swept_field =
            (spec.variable == SweptVariable::p_packet_in &&
             violation.invariant.find("p_packet_in") != std::string::npos) ||
            (spec.variable == SweptVariable::lambda &&
             violation.invariant.find("lambda > 0") != std::string::npos);
        if (violation.kind == Violation::Kind::structure && !swept_field) {
            throw ValidationError(violation.to_string());
        }
    }
    return spec;
}

}  // namespace detail

/// Parses a scenario or sweep file. Files with a top-level "sweep" or
/// "preset" key are sweeps; everything else must be a plain scenario, which
/// is validated in full (a structural defect or instability is a
/// ValidationError naming the offending entity).
inline ParsedScenarioFile parse_scenario_text(const std::string& text,
                                              const std::string& origin = "<input>") {
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        const auto [line, column] = detail::line_column_of(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ParseError(origin + ":" + std::to_string(line) + ":" + std::to_string(column) +
                             ": " + e.what(),
                         line, column);
    }
    if (!root.is_object()) {
        throw ParseError(origin + ": top level must be a JSON object");
    }

    if (root.contains("sweep") || root.contains("preset")) {
        detail::reject_unknown_keys(root, {"sweep", "preset", "scenario"}, "/");
        return detail::sweep_from_json(root);
    }
    NetworkScenario scenario = detail::scenario_from_json(root, "");
    const auto violations = validate_scenario(scenario);
    if (!violations.empty()) {
        std::string msg = origin + ": scenario invalid:";
        for (const auto& v : violations) msg += "\n  - " + v.to_string();
        throw ValidationError(msg);
    }
    return scenario;
}

inline ParsedScenarioFile parse_scenario_file(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) {
        throw IoError("cannot open scenario file: " + path);
    }
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return parse_scenario_text(buffer.str(), path);
}

/// Serializes a scenario so that parse(emit(s)) == s exactly (doubles are
/// emitted with round-trip precision).
inline nlohmann::json scenario_to_json(const NetworkScenario& scenario) {
    nlohmann::json switches = nlohmann::json::array();
    for (const auto& sw : scenario.switches) {
        switches.push_back({{"lambda", sw.lambda},
                            {"p_packet_in", sw.service.p_packet_in},
                            {"mu1", sw.service.mu1},
                            {"mu2", sw.service.mu2}});
    }
    return {{"switches", switches}, {"controller", {{"mu_c", scenario.controller.mu_c}}}};
}

inline std::string emit_scenario(const NetworkScenario& scenario) {
    return scenario_to_json(scenario).dump(2) + "\n";
}

}  // namespace ofq
