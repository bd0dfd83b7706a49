#pragma once

// Parameter sweeps over scenario families, with three built-in presets
// (fig5: switch delay vs packet-in probability, fig6: controller delay vs
// switch count, fig8: controller delay vs packet-in probability), and
// CSV / plot-data emission.

#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "ofq/error.hpp"
#include "ofq/network.hpp"
#include "ofq/sim.hpp"

namespace ofq {

enum class SweepPreset { custom, fig5, fig6, fig8 };
enum class SweptVariable { p_packet_in, n_switches, lambda };
enum class SweepOutputs { analytic, simulate, both };
enum class ReportFormat { csv, plot_data };

inline const char* to_string(SweepPreset p) {
    switch (p) {
        case SweepPreset::fig5: return "fig5";
        case SweepPreset::fig6: return "fig6";
        case SweepPreset::fig8: return "fig8";
        default: return "custom";
    }
}

inline const char* to_string(SweptVariable v) {
    switch (v) {
        case SweptVariable::p_packet_in: return "p_packet_in";
        case SweptVariable::n_switches: return "n_switches";
        default: return "lambda";
    }
}

inline const char* to_string(SweepOutputs o) {
    switch (o) {
        case SweepOutputs::analytic: return "analytic";
        case SweepOutputs::simulate: return "simulate";
        default: return "both";
    }
}

/// One sweep: a swept variable over [start, stop] in steps of `step`, applied
/// to a base scenario, optionally once per lambda series value (the curves of
/// a figure).
struct SweepSpec {
    SweepPreset preset = SweepPreset::custom;
    SweptVariable variable = SweptVariable::p_packet_in;
    double start = 0.0;
    double stop = 0.0;
    double step = 1.0;
    NetworkScenario base;               ///< fixed parameters; switches[0] is the
                                        ///< replication template for n sweeps
    std::vector<double> lambda_series;  ///< per-curve arrival rate; empty keeps base rates
    SweepOutputs outputs = SweepOutputs::analytic;
    std::uint64_t sim_packets = 50000;  ///< per-switch completions per simulated point
    std::optional<std::uint64_t> sim_warmup;
    std::uint64_t seed = 42;

    std::size_t point_count() const {
        return static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    }
    double point(std::size_t i) const {
        const double v = start + static_cast<double>(i) * step;
        return v > stop ? stop : v;
    }

    void validate() const {
        if (!(step > 0.0)) throw InvalidParameterError("sweep step must be > 0");
        if (stop < start) throw InvalidParameterError("sweep range is empty (stop < start)");
        if (base.switches.empty()) throw InvalidParameterError("sweep base scenario has no switches");
        if (variable == SweptVariable::n_switches) {
            if (start < 1.0) throw InvalidParameterError("n_switches sweep must start at n >= 1");
            if (std::abs(start - std::round(start)) > 1e-9 ||
                std::abs(step - std::round(step)) > 1e-9) {
                throw InvalidParameterError("n_switches sweep needs integral start and step");
            }
        }
        if (outputs != SweepOutputs::analytic && sim_packets == 0) {
            throw InvalidParameterError("sim_packets must be positive when simulating");
        }
    }
};

/// The parameter sets of the bundled study figures.
inline SweepSpec preset_spec(SweepPreset preset) {
    const HyperExpService service{0.1, 32000.0, 64000.0};
    const ControllerParams controller{256000.0};

    SweepSpec spec;
    spec.preset = preset;
    switch (preset) {
        case SweepPreset::fig5:
            // switch sojourn vs packet-in probability, one curve per arrival rate
            spec.variable = SweptVariable::p_packet_in;
            spec.start = 0.0;
            spec.stop = 1.0;
            spec.step = 0.05;
            spec.base = {{{20000.0, service}}, controller};
            spec.lambda_series = {20000.0, 25000.0, 30000.0};
            break;
        case SweepPreset::fig6:
            // controller sojourn vs switch count at p = 0.1
            spec.variable = SweptVariable::n_switches;
            spec.start = 1.0;
            spec.stop = 50.0;
            spec.step = 1.0;
            spec.base = {{{20000.0, service}}, controller};
            spec.lambda_series = {20000.0, 25000.0, 30000.0};
            break;
        case SweepPreset::fig8:
            // controller sojourn vs packet-in probability for 10 switches
            spec.variable = SweptVariable::p_packet_in;
            spec.start = 0.0;
            spec.stop = 1.0;
            spec.step = 0.05;
            spec.base = {std::vector<SwitchParams>(10, SwitchParams{20000.0, service}),
                         controller};
            spec.lambda_series = {10000.0, 15000.0, 20000.0};
            break;
        default:
            throw InvalidParameterError("no preset parameters for 'custom'");
    }
    return spec;
}

inline std::optional<SweepPreset> preset_from_name(const std::string& name) {
    if (name == "fig5") return SweepPreset::fig5;
    if (name == "fig6") return SweepPreset::fig6;
    if (name == "fig8") return SweepPreset::fig8;
    if (name == "custom") return SweepPreset::custom;
    return std::nullopt;
}

/// The scenario at one sweep point of one series curve.
inline NetworkScenario instantiate_scenario(const SweepSpec& spec, double series_lambda,
                                            bool has_series, double swept) {
    NetworkScenario scenario = spec.base;
    if (spec.variable == SweptVariable::n_switches) {
        const auto n = static_cast<std::size_t>(std::llround(swept));
        scenario.switches.assign(n, spec.base.switches.front());
    }
    for (auto& sw : scenario.switches) {
        switch (spec.variable) {
            case SweptVariable::p_packet_in: sw.service.p_packet_in = swept; break;
            case SweptVariable::lambda: sw.lambda = swept; break;
            case SweptVariable::n_switches: break;
        }
        if (has_series && spec.variable != SweptVariable::lambda) {
            sw.lambda = series_lambda;
        }
    }
    return scenario;
}

struct SweepRow {
    double swept = 0.0;
    double lambda = 0.0;  ///< series value (or the swept lambda itself)
    bool stable = false;
    std::string marker;  ///< violation summary for unstable points

    double e_t_si = 0.0;   ///< switch sojourn (first switch)
    double e_t_s = 0.0;    ///< traffic-weighted switch sojourn
    double e_t_c = 0.0;    ///< controller sojourn
    double e_t_sum = 0.0;  ///< additive total for the first switch
    double util_switch = 0.0;
    double util_ctrl = 0.0;

    bool has_sim = false;
    MeanCi sim_t_si;
    MeanCi sim_t_c;
};

struct SweepTable {
    SweepSpec spec;
    std::vector<SweepRow> rows;
};

/// Runs the sweep: one row per (series, point), series-major, points
/// ascending. Unstable points are marked, never aborted on. Simulated points
/// run concurrently on per-point derived seeds; rows are assembled in input
/// order, so output is deterministic for a fixed spec + seed.
inline SweepTable run_sweep(const SweepSpec& spec) {
    spec.validate();
    SweepTable table{spec, {}};

    std::vector<double> series = spec.lambda_series;
    bool has_series = !series.empty();
    if (spec.variable == SweptVariable::lambda || series.empty()) {
        has_series = spec.variable != SweptVariable::lambda && has_series;
        series = {0.0};  // single pass; lambda comes from the base or the sweep
    }

    const std::size_t points = spec.point_count();
    std::vector<NetworkScenario> scenarios;
    scenarios.reserve(series.size() * points);
    for (double series_lambda : series) {
        for (std::size_t i = 0; i < points; ++i) {
            scenarios.push_back(
                instantiate_scenario(spec, series_lambda, has_series, spec.point(i)));
        }
    }

    // Simulation pass, parallel over points.
    std::vector<std::optional<SimResult>> sims(scenarios.size());
    if (spec.outputs != SweepOutputs::analytic) {
        std::vector<std::size_t> jobs;
        for (std::size_t idx = 0; idx < scenarios.size(); ++idx) {
            if (validate_scenario(scenarios[idx]).empty()) jobs.push_back(idx);
        }
        std::atomic<std::size_t> cursor{0};
        const auto worker = [&] {
            while (true) {
                const std::size_t j = cursor.fetch_add(1);
                if (j >= jobs.size()) break;
                const std::size_t idx = jobs[j];
                SimConfig config;
                config.scenario = scenarios[idx];
                config.horizon_packets = spec.sim_packets;
                config.warmup_packets = spec.sim_warmup;
                config.seed = derive_stream_seed(spec.seed, idx);
                sims[idx] = run_simulation(config);
            }
        };
        const std::size_t threads =
            std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), jobs.size());
        if (threads <= 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            pool.reserve(threads);
            for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
            for (auto& t : pool) t.join();
        }
    }

    std::size_t idx = 0;
    for (double series_lambda : series) {
        for (std::size_t i = 0; i < points; ++i, ++idx) {
            const NetworkScenario& scenario = scenarios[idx];
            SweepRow row;
            row.swept = spec.point(i);
            row.lambda = spec.variable == SweptVariable::lambda ? row.swept
                         : has_series                           ? series_lambda
                                              : scenario.switches.front().lambda;

            const auto violations = validate_scenario(scenario);
            if (!violations.empty()) {
                row.stable = false;
                for (const auto& v : violations) {
                    row.marker += (row.marker.empty() ? "" : "; ") + v.to_string();
                }
            } else {
                row.stable = true;
                const ScenarioReport report = solve_scenario(scenario);
                row.e_t_si = report.per_switch.front().mean_sojourn_s;
                row.e_t_s = report.weighted_switch_delay;
                row.e_t_c = report.controller.mean_sojourn_s;
                row.e_t_sum = report.per_switch_total.front();
                row.util_switch = report.per_switch.front().utilization;
                row.util_ctrl = report.controller.utilization;
                if (sims[idx].has_value()) {
                    row.has_sim = true;
                    row.sim_t_si = sims[idx]->per_switch.front().sojourn;
                    row.sim_t_c = sims[idx]->controller.sojourn;
                }
            }
            table.rows.push_back(std::move(row));
        }
    }
    return table;
}

namespace detail {

inline std::string format_value(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

inline bool emits_sim(const SweepSpec& spec) {
    return spec.outputs != SweepOutputs::analytic;
}

inline bool emits_analytic(const SweepSpec& spec) {
    return spec.outputs != SweepOutputs::simulate;
}

/// The y quantity a preset's figure plots: switch sojourn for fig5, controller
/// sojourn for fig6/fig8.
inline bool plots_controller(SweepPreset preset) {
    return preset == SweepPreset::fig6 || preset == SweepPreset::fig8;
}

inline std::string swept_column_name(const SweepSpec& spec) {
    switch (spec.variable) {
        case SweptVariable::p_packet_in: return "p";
        case SweptVariable::n_switches: return "n";
        default: return "lambda";
    }
}

}  // namespace detail

/// CSV in long format, one row per (series, point); seconds, '.' radix,
/// '\n' line endings. Unstable points carry the "unstable" marker; simulated
/// cells without data (e.g. no packet-ins at p = 0) carry "na".
inline std::string to_csv(const SweepTable& table) {
    const SweepSpec& spec = table.spec;
    const bool swept_is_lambda = spec.variable == SweptVariable::lambda;
    std::string out = detail::swept_column_name(spec);
    if (!swept_is_lambda) out += ",lambda";

    if (spec.preset == SweepPreset::custom) {
        if (detail::emits_analytic(spec)) {
            out += ",E_T_si_s,E_T_s_s,E_T_c_s,E_T_sum_s,switch_utilization,controller_utilization";
        }
        if (detail::emits_sim(spec)) {
            out += ",sim_E_T_si_s,sim_T_si_ci_half_s,sim_E_T_c_s,sim_T_c_ci_half_s";
        }
    } else {
        const bool ctrl = detail::plots_controller(spec.preset);
        if (detail::emits_analytic(spec)) {
            out += ctrl ? ",E_T_c_s,utilization" : ",E_T_si_s,utilization";
        }
        if (detail::emits_sim(spec)) {
            out += ctrl ? ",sim_E_T_c_s,sim_ci_half_s" : ",sim_E_T_si_s,sim_ci_half_s";
        }
    }
    out += ",stable\n";

    for (const auto& row : table.rows) {
        std::string line = detail::format_value(row.swept);
        if (!swept_is_lambda) line += "," + detail::format_value(row.lambda);

        const auto cell = [&](double v, bool available) {
            line += ",";
            line += row.stable ? (available ? detail::format_value(v) : "na") : "unstable";
        };
        const auto sim_cells = [&](const MeanCi& ci) {
            cell(ci.mean, row.has_sim && ci.count > 0);
            cell(ci.ci_half, row.has_sim && ci.count > 0);
        };

        if (spec.preset == SweepPreset::custom) {
            if (detail::emits_analytic(spec)) {
                cell(row.e_t_si, true);
                cell(row.e_t_s, true);
                cell(row.e_t_c, true);
                cell(row.e_t_sum, true);
                cell(row.util_switch, true);
                cell(row.util_ctrl, true);
            }
            if (detail::emits_sim(spec)) {
                sim_cells(row.sim_t_si);
                sim_cells(row.sim_t_c);
            }
        } else {
            const bool ctrl = detail::plots_controller(spec.preset);
            if (detail::emits_analytic(spec)) {
                cell(ctrl ? row.e_t_c : row.e_t_si, true);
                cell(ctrl ? row.util_ctrl : row.util_switch, true);
            }
            if (detail::emits_sim(spec)) {
                sim_cells(ctrl ? row.sim_t_c : row.sim_t_si);
            }
        }
        line += row.stable ? ",true" : ",false";
        out += line + "\n";
    }
    return out;
}

/// Whitespace-separated (x, one column per series curve) layout for plotting
/// tools; missing values emit "-".
inline std::string to_plot_data(const SweepTable& table) {
    const SweepSpec& spec = table.spec;
    const std::size_t points = spec.point_count();
    const std::size_t n_series = points == 0 ? 0 : table.rows.size() / points;

    const bool custom = spec.preset == SweepPreset::custom;
    const bool ctrl = detail::plots_controller(spec.preset);
    const char* quantity = custom ? "E_T_sum_s" : (ctrl ? "E_T_c_s" : "E_T_si_s");
    // sim columns track a single node's sojourn, so they only accompany the
    // figure presets
    const bool with_sim = detail::emits_sim(spec) && !custom;

    std::string out = "# " + std::string(to_string(spec.preset)) + " sweep of " +
                      to_string(spec.variable) + "\n";
    out += "# columns: " + detail::swept_column_name(spec);
    for (std::size_t s = 0; s < n_series; ++s) {
        const std::string curve = "(lambda=" +
                                  detail::format_value(table.rows[s * points].lambda) + ")";
        if (detail::emits_analytic(spec) || custom) {
            out += " " + std::string(quantity) + curve;
        }
        if (with_sim) {
            out += " sim_" + std::string(quantity) + curve;
        }
    }
    out += "\n";

    for (std::size_t i = 0; i < points; ++i) {
        std::string line = detail::format_value(table.rows[i].swept);
        for (std::size_t s = 0; s < n_series; ++s) {
            const SweepRow& row = table.rows[s * points + i];
            const double analytic = custom ? row.e_t_sum : (ctrl ? row.e_t_c : row.e_t_si);
            if (detail::emits_analytic(spec) || custom) {
                line += row.stable ? " " + detail::format_value(analytic) : " -";
            }
            if (with_sim) {
                const MeanCi& ci = ctrl ? row.sim_t_c : row.sim_t_si;
                line += (row.stable && row.has_sim && ci.count > 0)
                            ? " " + detail::format_value(ci.mean)
                            : " -";
            }
        }
        out += line + "\n";
    }
    return out;
}

/// Writes the table to `path` in the requested format. Throws Error on an
/// empty table and IoError (naming the path) on write failure.
inline void emit_report(const SweepTable& table, ReportFormat format, const std::string& path) {
    if (table.rows.empty()) {
        throw Error("empty sweep");
    }
    const std::string body = format == ReportFormat::csv ? to_csv(table) : to_plot_data(table);
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw IoError("cannot open for writing: " + path);
    }
    file << body;
    file.flush();
    if (!file) {
        throw IoError("write failed: " + path);
    }
}

}  // namespace ofq
