#pragma once

// Seeded discrete-event simulation of the switches-plus-controller network.
// Poisson arrivals per switch, two-phase exponential switch service, FIFO
// controller with exponential service. Serves as the stochastic cross-check
// for the analytic solvers; event ordering and all sampling are fully
// deterministic for a fixed (config, seed).

#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "ofq/error.hpp"
#include "ofq/network.hpp"
#include "ofq/rng.hpp"
#include "ofq/stats.hpp"

namespace ofq {

/// additive scores total delay as the sum of the two node means; feedback
/// follows each packet-in packet switch -> controller -> done and scores its
/// measured end-to-end time. Node dynamics are identical, only the
/// total-delay scoring differs.
enum class SimVariant { additive, feedback };

inline const char* to_string(SimVariant v) {
    return v == SimVariant::additive ? "additive" : "feedback";
}

/// Next inter-arrival gap in seconds for a switch with mean rate `lambda`,
/// drawing from that switch's uniform stream. Swap this to model non-Poisson
/// arrival processes.
using InterArrivalSampler = std::function<double(double lambda, SplitMix64& rng)>;

inline double exponential_inter_arrival(double lambda, SplitMix64& rng) {
    return sample_exponential(lambda, rng.next_open01());
}

struct SimConfig {
    NetworkScenario scenario;
    std::uint64_t horizon_packets = 0;  ///< completions to collect per switch
    std::optional<std::uint64_t> warmup_packets;  ///< discarded; default horizon/10
    std::uint64_t seed = 0;
    SimVariant variant = SimVariant::additive;
    InterArrivalSampler inter_arrival;  ///< empty = exponential (Poisson arrivals)

    std::uint64_t resolved_warmup() const {
        return warmup_packets.value_or(horizon_packets / 10);
    }
};

/// Per-node steady-state estimates from one run.
struct NodeStat {
    MeanCi sojourn;                      ///< mean/CI over measured completions
    double mean_queue_len = 0.0;         ///< time-average over the measured window
    double arrival_avg_queue_len = 0.0;  ///< queue length seen by arrivals (PASTA check)
    std::uint64_t packet_in_count = 0;   ///< measured completions that were packet-ins
};

struct SimResult {
    std::vector<NodeStat> per_switch;
    NodeStat controller;
    /// Variant-scored mean total delay per switch (seconds).
    std::vector<double> per_switch_total_sojourn_s;
    SimVariant variant = SimVariant::additive;
    std::uint64_t seed = 0;
    std::string rng_algorithm;
    bool stability_warning = false;
    std::string warning;
};

namespace detail {

enum class EventKind : std::uint8_t { switch_arrival, switch_departure, controller_departure };

struct Event {
    double time;
    std::uint64_t seq;  // insertion order breaks timestamp ties
    EventKind kind;
    std::uint32_t node;
};

struct EventAfter {
    bool operator()(const Event& a, const Event& b) const {
        if (a.time != b.time) return a.time > b.time;
        return a.seq > b.seq;
    }
};

struct QueuedPacket {
    double arrival_time;
    bool packet_in;
};

struct ControllerMessage {
    double message_arrival;
    double switch_arrival;
    std::uint32_t switch_idx;
    bool measured;
};

struct SwitchRun {
    SplitMix64 arrival_rng;
    SplitMix64 class_rng;
    SplitMix64 service_rng;
    std::deque<QueuedPacket> queue;  // front is in service
    std::uint64_t completions = 0;
    bool measuring = false;
    bool done = false;
    double window_start = 0.0;
    double window_end = 0.0;
    double last_event_time = 0.0;
    double queue_len_area = 0.0;
    double arrival_seen_sum = 0.0;
    std::uint64_t arrival_seen_count = 0;
    std::uint64_t packet_in_count = 0;
    std::vector<double> sojourns;
    double total_sum = 0.0;  // feedback-variant end-to-end accumulation
    std::uint64_t total_count = 0;
};

}  // namespace detail

/// Runs one simulation. Deterministic for fixed (config, seed): ties in the
/// event queue are broken by insertion sequence, and every random draw comes
/// from a per-purpose counter-based substream. Structural scenario defects
/// raise ValidationError; an unstable but well-formed scenario still runs
/// and sets stability_warning.
inline SimResult run_simulation(const SimConfig& config) {
    using namespace detail;

    if (config.horizon_packets == 0) {
        throw ConfigError("horizon_packets must be positive");
    }
    const std::uint64_t warmup = config.resolved_warmup();
    if (warmup >= config.horizon_packets) {
        throw ConfigError("warmup_packets (" + std::to_string(warmup) +
                          ") must be smaller than horizon_packets (" +
                          std::to_string(config.horizon_packets) + ")");
    }
    const NetworkScenario& scenario = config.scenario;
    const std::size_t n = scenario.switches.size();

    SimResult result;
    result.variant = config.variant;
    result.seed = config.seed;
    result.rng_algorithm = SplitMix64::kAlgorithmName;
    for (const auto& violation : validate_scenario(scenario)) {
        if (violation.kind == Violation::Kind::structure) {
            throw ValidationError("cannot simulate: " + violation.to_string());
        }
        result.stability_warning = true;
        result.warning += (result.warning.empty() ? "" : "; ") + violation.to_string();
    }

    const std::uint64_t horizon = config.horizon_packets;
    const std::uint64_t measured_target = horizon - warmup;

    std::vector<SwitchRun> switches(n);
    for (std::size_t i = 0; i < n; ++i) {
        switches[i].arrival_rng = SplitMix64(derive_stream_seed(config.seed, 3 * i));
        switches[i].class_rng = SplitMix64(derive_stream_seed(config.seed, 3 * i + 1));
        switches[i].service_rng = SplitMix64(derive_stream_seed(config.seed, 3 * i + 2));
        switches[i].sojourns.reserve(measured_target);
        switches[i].measuring = (warmup == 0);
    }
    SplitMix64 controller_rng(derive_stream_seed(config.seed, 3 * n));
    std::deque<ControllerMessage> controller_queue;
    std::vector<double> controller_sojourns;
    double controller_area = 0.0;
    double controller_last_time = 0.0;
    double controller_arrival_seen_sum = 0.0;
    std::uint64_t controller_arrival_seen_count = 0;
    std::uint64_t controller_packet_ins = 0;

    std::priority_queue<Event, std::vector<Event>, EventAfter> events;
    std::uint64_t next_seq = 0;
    const auto schedule = [&](double t, EventKind kind, std::uint32_t node) {
        events.push(Event{t, next_seq++, kind, node});
    };
    const auto next_gap = [&](std::size_t i) {
        SwitchRun& sw = switches[i];
        const double lambda = scenario.switches[i].lambda;
        return config.inter_arrival ? config.inter_arrival(lambda, sw.arrival_rng)
                                    : exponential_inter_arrival(lambda, sw.arrival_rng);
    };

    for (std::size_t i = 0; i < n; ++i) {
        schedule(next_gap(i), EventKind::switch_arrival, static_cast<std::uint32_t>(i));
    }

    const auto advance_switch_clock = [&](SwitchRun& sw, double t) {
        if (sw.measuring) {
            sw.queue_len_area += static_cast<double>(sw.queue.size()) * (t - sw.last_event_time);
        }
        sw.last_event_time = t;
    };
    const auto advance_controller_clock = [&](double t) {
        controller_area += static_cast<double>(controller_queue.size()) * (t - controller_last_time);
        controller_last_time = t;
    };
    const auto start_switch_service = [&](std::size_t i, double now) {
        SwitchRun& sw = switches[i];
        const auto& params = scenario.switches[i];
        const ServicePhase phase =
            sw.queue.front().packet_in ? ServicePhase::packet_in : ServicePhase::direct;
        const double service = sample_service(phase, params.service, sw.service_rng.next_open01());
        schedule(now + service, EventKind::switch_departure, static_cast<std::uint32_t>(i));
    };
    const auto start_controller_service = [&](double now) {
        const double service =
            sample_exponential(scenario.controller.mu_c, controller_rng.next_open01());
        schedule(now + service, EventKind::controller_departure, 0);
    };

    std::size_t switches_done = 0;
    while (switches_done < n) {
        const Event ev = events.top();
        events.pop();
        const double now = ev.time;

        switch (ev.kind) {
            case EventKind::switch_arrival: {
                SwitchRun& sw = switches[ev.node];
                const auto& params = scenario.switches[ev.node];
                advance_switch_clock(sw, now);
                if (sw.measuring) {
                    sw.arrival_seen_sum += static_cast<double>(sw.queue.size());
                    sw.arrival_seen_count += 1;
                }
                const bool packet_in = sw.class_rng.next_open01() < params.service.p_packet_in;
                sw.queue.push_back(QueuedPacket{now, packet_in});
                if (sw.queue.size() == 1) {
                    start_switch_service(ev.node, now);
                }
                schedule(now + next_gap(ev.node), EventKind::switch_arrival, ev.node);
                break;
            }
            case EventKind::switch_departure: {
                SwitchRun& sw = switches[ev.node];
                advance_switch_clock(sw, now);
                const QueuedPacket pkt = sw.queue.front();
                sw.queue.pop_front();
                sw.completions += 1;

                const bool measured = sw.completions > warmup && sw.completions <= horizon;
                if (measured) {
                    sw.sojourns.push_back(now - pkt.arrival_time);
                    if (pkt.packet_in) sw.packet_in_count += 1;
                    if (!pkt.packet_in) {
                        // direct packets end here in both variants
                        sw.total_sum += now - pkt.arrival_time;
                        sw.total_count += 1;
                    }
                }
                if (pkt.packet_in) {
                    advance_controller_clock(now);
                    controller_arrival_seen_sum += static_cast<double>(controller_queue.size());
                    controller_arrival_seen_count += 1;
                    controller_queue.push_back(
                        ControllerMessage{now, pkt.arrival_time, ev.node, measured});
                    if (controller_queue.size() == 1) {
                        start_controller_service(now);
                    }
                }
                if (!sw.queue.empty()) {
                    start_switch_service(ev.node, now);
                }
                if (sw.completions == warmup) {
                    sw.measuring = true;
                    sw.window_start = now;
                    sw.last_event_time = now;
                }
                if (sw.completions == horizon && !sw.done) {
                    sw.measuring = false;
                    sw.window_end = now;
                    sw.done = true;
                    switches_done += 1;
                }
                break;
            }
            case EventKind::controller_departure: {
                advance_controller_clock(now);
                const ControllerMessage msg = controller_queue.front();
                controller_queue.pop_front();
                controller_sojourns.push_back(now - msg.message_arrival);
                controller_packet_ins += 1;
                if (msg.measured) {
                    SwitchRun& sw = switches[msg.switch_idx];
                    sw.total_sum += now - msg.switch_arrival;
                    sw.total_count += 1;
                }
                if (!controller_queue.empty()) {
                    start_controller_service(now);
                }
                break;
            }
        }
    }

    const double end_time = controller_last_time;  // only used for the controller average

    result.per_switch.resize(n);
    result.per_switch_total_sojourn_s.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        SwitchRun& sw = switches[i];
        NodeStat& stat = result.per_switch[i];
        stat.sojourn = batch_means_ci(sw.sojourns);
        const double window = sw.window_end - sw.window_start;
        stat.mean_queue_len = window > 0.0 ? sw.queue_len_area / window : 0.0;
        stat.arrival_avg_queue_len =
            sw.arrival_seen_count > 0
                ? sw.arrival_seen_sum / static_cast<double>(sw.arrival_seen_count)
                : 0.0;
        stat.packet_in_count = sw.packet_in_count;
    }

    // Controller warmup: same fraction of its completions as the switches use
    // of theirs.
    const std::size_t ctrl_total = controller_sojourns.size();
    const std::size_t ctrl_warmup = static_cast<std::size_t>(
        static_cast<double>(ctrl_total) * static_cast<double>(warmup) /
        static_cast<double>(horizon));
    {
        NodeStat& stat = result.controller;
        const std::span<const double> measured(controller_sojourns.data() + ctrl_warmup,
                                               ctrl_total - ctrl_warmup);
        stat.sojourn = batch_means_ci(measured);
        stat.mean_queue_len = end_time > 0.0 ? controller_area / end_time : 0.0;
        stat.arrival_avg_queue_len =
            controller_arrival_seen_count > 0
                ? controller_arrival_seen_sum / static_cast<double>(controller_arrival_seen_count)
                : 0.0;
        stat.packet_in_count = controller_packet_ins;
    }

    for (std::size_t i = 0; i < n; ++i) {
        if (config.variant == SimVariant::additive) {
            result.per_switch_total_sojourn_s[i] =
                result.per_switch[i].sojourn.mean + result.controller.sojourn.mean;
        } else {
            result.per_switch_total_sojourn_s[i] =
                switches[i].total_count > 0
                    ? switches[i].total_sum / static_cast<double>(switches[i].total_count)
                    : 0.0;
        }
    }
    return result;
}

}  // namespace ofq
