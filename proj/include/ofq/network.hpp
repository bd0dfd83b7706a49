#pragma once

// Whole-scenario composition: n switches feeding one controller. Aggregates
// the packet-in stream, the traffic-weighted switch delay, and the additive
// per-switch total delay.

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "ofq/controller.hpp"
#include "ofq/error.hpp"
#include "ofq/hyperexp.hpp"
#include "ofq/metrics.hpp"
#include "ofq/switch_queue.hpp"

namespace ofq {

/// One switch: its Poisson arrival rate and hyperexponential service law.
struct SwitchParams {
    double lambda = 0.0;  ///< packets/second, > 0
    HyperExpService service;

    friend bool operator==(const SwitchParams&, const SwitchParams&) = default;
};

/// n >= 1 switches sharing a single controller.
struct NetworkScenario {
    std::vector<SwitchParams> switches;
    ControllerParams controller;

    std::size_t size() const { return switches.size(); }

    double total_arrival_rate() const {
        double sum = 0.0;
        for (const auto& sw : switches) sum += sw.lambda;
        return sum;
    }

    friend bool operator==(const NetworkScenario&, const NetworkScenario&) = default;
};

/// One failed scenario invariant. Violations are data, not exceptions.
struct Violation {
    enum class Kind { structure, stability };

    Kind kind = Kind::structure;
    std::string entity;     ///< "switch[3]" or "controller" or "scenario"
    std::string invariant;  ///< the rule that failed
    double value = 0.0;     ///< the computed offending value

    std::string to_string() const {
        return entity + ": " + invariant + " (got " + std::to_string(value) + ")";
    }
};

/// Sum of lambda_i * rho_i over all switches: the aggregate packet-in rate
/// offered to the controller.
inline double aggregate_packet_in_rate(const NetworkScenario& scenario) {
    double sum = 0.0;
    for (const auto& sw : scenario.switches) sum += sw.lambda * sw.service.p_packet_in;
    return sum;
}

/// Checks every NetworkScenario invariant; empty result means valid.
inline std::vector<Violation> validate_scenario(const NetworkScenario& scenario) {
    std::vector<Violation> out;
    const auto entity = [](std::size_t i) { return "switch[" + std::to_string(i) + "]"; };

    if (scenario.switches.empty()) {
        out.push_back({Violation::Kind::structure, "scenario", "switch count n >= 1", 0.0});
    }
    for (std::size_t i = 0; i < scenario.switches.size(); ++i) {
        const auto& sw = scenario.switches[i];
        bool service_ok = true;
        if (!(sw.lambda > 0.0) || !std::isfinite(sw.lambda)) {
            out.push_back({Violation::Kind::structure, entity(i), "arrival rate lambda > 0",
                           sw.lambda});
        }
        if (!(sw.service.p_packet_in >= 0.0 && sw.service.p_packet_in <= 1.0)) {
            out.push_back({Violation::Kind::structure, entity(i),
                           "probability out of range: p_packet_in must lie in [0,1]",
                           sw.service.p_packet_in});
            service_ok = false;
        }
        if (!(sw.service.mu1 > 0.0) || !std::isfinite(sw.service.mu1)) {
            out.push_back(
                {Violation::Kind::structure, entity(i), "service rate mu1 > 0", sw.service.mu1});
            service_ok = false;
        }
        if (!(sw.service.mu2 > 0.0) || !std::isfinite(sw.service.mu2)) {
            out.push_back(
                {Violation::Kind::structure, entity(i), "service rate mu2 > 0", sw.service.mu2});
            service_ok = false;
        }
        if (service_ok && sw.lambda > 0.0 && std::isfinite(sw.lambda)) {
            const double util = switch_utilization(sw.service, sw.lambda);
            if (!is_stable_load(util)) {
                out.push_back(
                    {Violation::Kind::stability, entity(i), "utilization < 1", util});
            }
        }
    }
    if (!(scenario.controller.mu_c > 0.0) || !std::isfinite(scenario.controller.mu_c)) {
        out.push_back({Violation::Kind::structure, "controller", "service rate mu_c > 0",
                       scenario.controller.mu_c});
    } else {
        const double lambda_c = aggregate_packet_in_rate(scenario);
        if (lambda_c >= scenario.controller.mu_c) {
            out.push_back({Violation::Kind::stability, "controller",
                           "packet-in rate sum(lambda_i * rho_i) < mu_c", lambda_c});
        }
    }
    return out;
}

inline void require_valid_scenario(const NetworkScenario& scenario) {
    const auto violations = validate_scenario(scenario);
    if (!violations.empty()) {
        std::string msg = "scenario invalid:";
        for (const auto& v : violations) msg += "\n  - " + v.to_string();
        throw ValidationError(msg);
    }
}

/// Traffic-weighted mean switch delay, sum_i (lambda_i / sum_j lambda_j) E[T_si].
/// Instability errors name the offending switch index.
inline double weighted_switch_delay(const NetworkScenario& scenario) {
    if (scenario.switches.empty()) {
        throw InvalidParameterError("scenario has no switches");
    }
    const double total_rate = scenario.total_arrival_rate();
    double delay = 0.0;
    for (std::size_t i = 0; i < scenario.switches.size(); ++i) {
        const auto& sw = scenario.switches[i];
        try {
            delay += (sw.lambda / total_rate) *
                     solve_switch_queue(sw.service, sw.lambda).metrics.mean_sojourn_s;
        } catch (const InstabilityError& e) {
            throw InstabilityError("switch[" + std::to_string(i) + "]: " + e.what(),
                                   e.utilization());
        }
    }
    return delay;
}

namespace detail {
inline void check_switch_index(const NetworkScenario& scenario, std::size_t i) {
    if (i >= scenario.switches.size()) {
        throw std::out_of_range("switch index " + std::to_string(i) + " out of range [0," +
                                std::to_string(scenario.switches.size()) + ")");
    }
}
}  // namespace detail

/// Additive total delay for packets of switch i: E[T_c] + E[T_si], with the
/// controller term computed from the whole scenario's packet-in stream.
/// The controller delay is charged to every packet, matched or not.
inline double total_delay_per_switch(const NetworkScenario& scenario, std::size_t i) {
    detail::check_switch_index(scenario, i);
    const double lambda_c = aggregate_packet_in_rate(scenario);
    const double t_controller = controller_mean_sojourn(scenario.controller, lambda_c);
    const auto& sw = scenario.switches[i];
    try {
        return t_controller + solve_switch_queue(sw.service, sw.lambda).metrics.mean_sojourn_s;
    } catch (const InstabilityError& e) {
        throw InstabilityError("switch[" + std::to_string(i) + "]: " + e.what(),
                               e.utilization());
    }
}

/// Extension beyond the additive form: only the packet-in fraction rho_i of
/// switch i's packets pays the controller delay, rho_i E[T_c] + E[T_si].
inline double expected_total_delay_per_switch(const NetworkScenario& scenario, std::size_t i) {
    detail::check_switch_index(scenario, i);
    const double lambda_c = aggregate_packet_in_rate(scenario);
    const double t_controller = controller_mean_sojourn(scenario.controller, lambda_c);
    const auto& sw = scenario.switches[i];
    return sw.service.p_packet_in * t_controller +
           solve_switch_queue(sw.service, sw.lambda).metrics.mean_sojourn_s;
}

/// Everything the analytic model says about one scenario, assembled in
/// switch input order.
struct ScenarioReport {
    std::vector<QueueMetrics> per_switch;
    QueueMetrics controller;
    double lambda_c = 0.0;
    double weighted_switch_delay = 0.0;            ///< E[T_s]
    std::vector<double> per_switch_total;          ///< E[T_sum], additive form
    std::vector<double> per_switch_total_expected; ///< rho_i E[T_c] + E[T_si]
};

inline ScenarioReport solve_scenario(const NetworkScenario& scenario) {
    require_valid_scenario(scenario);
    ScenarioReport report;
    report.lambda_c = aggregate_packet_in_rate(scenario);
    report.controller = controller_metrics(scenario.controller, report.lambda_c);

    const double total_rate = scenario.total_arrival_rate();
    report.per_switch.reserve(scenario.switches.size());
    double weighted = 0.0;
    for (const auto& sw : scenario.switches) {
        const QueueMetrics m = solve_switch_queue(sw.service, sw.lambda).metrics;
        weighted += (sw.lambda / total_rate) * m.mean_sojourn_s;
        report.per_switch.push_back(m);
    }
    report.weighted_switch_delay = weighted;

    report.per_switch_total.reserve(scenario.switches.size());
    for (std::size_t i = 0; i < scenario.switches.size(); ++i) {
        report.per_switch_total.push_back(report.controller.mean_sojourn_s +
                                          report.per_switch[i].mean_sojourn_s);
        report.per_switch_total_expected.push_back(
            scenario.switches[i].service.p_packet_in * report.controller.mean_sojourn_s +
            report.per_switch[i].mean_sojourn_s);
    }
    return report;
}

}  // namespace ofq
