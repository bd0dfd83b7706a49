// ofq command line: analytic solves, sweeps, and scenario validation.
//
// Exit codes: 0 success, 1 validation failure, 2 I/O or parse failure.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <variant>

#include <CLI11.hpp>

#include "ofq/ofq.hpp"

namespace {

struct SweepCliOptions {
    std::string preset;
    std::string spec_file;
    bool simulate = false;
    std::optional<std::uint64_t> packets;
    std::optional<std::uint64_t> warmup;
    std::optional<std::uint64_t> seed;
    std::string format = "csv";
    std::string out;
};

void add_sweep_source_options(CLI::App* cmd, SweepCliOptions& opts) {
    cmd->add_option("--preset", opts.preset, "built-in sweep preset (fig5|fig6|fig8)")
        ->check(CLI::IsMember({"fig5", "fig6", "fig8"}));
    cmd->add_option("--spec", opts.spec_file, "sweep spec file (JSON)");
    cmd->add_flag("--simulate", opts.simulate, "run the simulator at every stable point");
    cmd->add_option("--packets", opts.packets, "simulated completions per switch per point");
    cmd->add_option("--warmup", opts.warmup, "simulated completions discarded per switch");
    cmd->add_option("--seed", opts.seed, "base seed for simulated sweeps");
}

ofq::SweepSpec resolve_sweep_spec(const SweepCliOptions& opts) {
    ofq::SweepSpec spec;
    if (!opts.spec_file.empty()) {
        auto parsed = ofq::parse_scenario_file(opts.spec_file);
        if (!std::holds_alternative<ofq::SweepSpec>(parsed)) {
            throw ofq::ValidationError(opts.spec_file +
                                       ": not a sweep spec (add a \"sweep\" or \"preset\" block)");
        }
        spec = std::get<ofq::SweepSpec>(parsed);
    } else if (!opts.preset.empty()) {
        spec = ofq::preset_spec(*ofq::preset_from_name(opts.preset));
    } else {
        throw ofq::ValidationError("sweep needs --preset or --spec");
    }
    if (opts.simulate) spec.outputs = ofq::SweepOutputs::both;
    if (opts.packets) spec.sim_packets = *opts.packets;
    if (opts.warmup) spec.sim_warmup = *opts.warmup;
    if (opts.seed) spec.seed = *opts.seed;
    return spec;
}

ofq::ReportFormat parse_format(const std::string& name) {
    if (name == "csv") return ofq::ReportFormat::csv;
    if (name == "plot-data") return ofq::ReportFormat::plot_data;
    throw ofq::ValidationError("unknown format '" + name + "' (csv|plot-data)");
}

void emit_table(const ofq::SweepTable& table, ofq::ReportFormat format, const std::string& out) {
    if (out.empty()) {
        std::cout << (format == ofq::ReportFormat::csv ? ofq::to_csv(table)
                                                       : ofq::to_plot_data(table));
    } else {
        ofq::emit_report(table, format, out);
        std::cerr << "wrote " << out << "\n";
    }
}

void print_analysis(const ofq::NetworkScenario& scenario, bool millis) {
    const ofq::ScenarioReport report = ofq::solve_scenario(scenario);
    const double unit = millis ? 1e3 : 1.0;
    const char* suffix = millis ? "ms" : "s";

    std::printf("scenario: %zu switch(es), controller mu_c = %g msgs/s\n",
                scenario.switches.size(), scenario.controller.mu_c);
    std::printf("aggregate packet-in rate lambda_c = %g msgs/s\n\n", report.lambda_c);
    std::printf("%6s %10s %8s %8s %12s %14s %14s %14s\n", "switch", "lambda", "p", "util",
                "E[N]", "E[T_si]", "E[T_sum]", "E[T_sum|rho]");
    for (std::size_t i = 0; i < scenario.switches.size(); ++i) {
        const auto& sw = scenario.switches[i];
        const auto& m = report.per_switch[i];
        std::printf("%6zu %10g %8g %8.4f %12.6g %14.6g %14.6g %14.6g\n", i, sw.lambda,
                    sw.service.p_packet_in, m.utilization, m.mean_queue_len,
                    m.mean_sojourn_s * unit, report.per_switch_total[i] * unit,
                    report.per_switch_total_expected[i] * unit);
    }
    std::printf("\ncontroller: util %.4f  E[N_c] %.6g  E[T_c] %.6g %s\n",
                report.controller.utilization, report.controller.mean_queue_len,
                report.controller.mean_sojourn_s * unit, suffix);
    std::printf("traffic-weighted switch delay E[T_s] = %.6g %s\n",
                report.weighted_switch_delay * unit, suffix);
    std::printf("(delays in %s; E[T_sum] charges every packet the controller delay,\n"
                " E[T_sum|rho] only the packet-in fraction)\n",
                suffix);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"queueing-model delay analysis for OpenFlow-style networks"};
    app.require_subcommand(1);

    std::string analyze_file;
    bool analyze_ms = false;
    auto* analyze = app.add_subcommand("analyze", "solve a scenario file and print its delays");
    analyze->add_option("scenario", analyze_file, "scenario JSON file")->required();
    analyze->add_flag("--ms", analyze_ms, "print delays in milliseconds");

    std::string validate_file;
    auto* validate = app.add_subcommand("validate", "check a scenario or sweep file");
    validate->add_option("file", validate_file, "scenario or sweep JSON file")->required();

    SweepCliOptions sweep_opts;
    auto* sweep = app.add_subcommand("sweep", "run a parameter sweep and print/write a report");
    add_sweep_source_options(sweep, sweep_opts);
    sweep->add_option("--format", sweep_opts.format, "csv|plot-data (default csv)")
        ->check(CLI::IsMember({"csv", "plot-data"}));
    sweep->add_option("--out", sweep_opts.out, "output path (default stdout)");

    SweepCliOptions emit_opts;
    auto* emit = app.add_subcommand("emit", "run a sweep and write the report to a file");
    add_sweep_source_options(emit, emit_opts);
    emit->add_option("--format", emit_opts.format, "csv|plot-data")->required();
    emit->add_option("--out", emit_opts.out, "output path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed()) {
            auto parsed = ofq::parse_scenario_file(analyze_file);
            if (!std::holds_alternative<ofq::NetworkScenario>(parsed)) {
                throw ofq::ValidationError(analyze_file +
                                           ": analyze expects a scenario file, not a sweep spec");
            }
            print_analysis(std::get<ofq::NetworkScenario>(parsed), analyze_ms);
        } else if (validate->parsed()) {
            auto parsed = ofq::parse_scenario_file(validate_file);
            if (std::holds_alternative<ofq::NetworkScenario>(parsed)) {
                const auto& scenario = std::get<ofq::NetworkScenario>(parsed);
                std::printf("%s: valid scenario, %zu switch(es), lambda_c = %g msgs/s\n",
                            validate_file.c_str(), scenario.switches.size(),
                            ofq::aggregate_packet_in_rate(scenario));
            } else {
                const auto& spec = std::get<ofq::SweepSpec>(parsed);
                std::printf("%s: valid sweep spec (%s over %s, %zu point(s))\n",
                            validate_file.c_str(), ofq::to_string(spec.preset),
                            ofq::to_string(spec.variable), spec.point_count());
            }
        } else if (sweep->parsed()) {
            const ofq::SweepSpec spec = resolve_sweep_spec(sweep_opts);
            emit_table(ofq::run_sweep(spec), parse_format(sweep_opts.format), sweep_opts.out);
        } else if (emit->parsed()) {
            const ofq::SweepSpec spec = resolve_sweep_spec(emit_opts);
            emit_table(ofq::run_sweep(spec), parse_format(emit_opts.format), emit_opts.out);
        }
    } catch (const ofq::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ofq::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ofq::Error& e) {
        // validation, instability, bad parameters
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
