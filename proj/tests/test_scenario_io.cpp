#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <random>
#include <string>
#include <variant>

#include "ofq/scenario_io.hpp"

using namespace ofq;

namespace {

const char* kValidScenario = R"({
  "switches": [
    {"lambda": 20000, "p_packet_in": 0.1, "mu1": 32000, "mu2": 64000, "count": 3},
    {"lambda": 5000, "p_packet_in": 0.5, "mu1": 32000, "mu2": 64000}
  ],
  "controller": {"mu_c": 256000}
})";

NetworkScenario parse_scenario(const std::string& text) {
    auto parsed = parse_scenario_text(text);
    REQUIRE(std::holds_alternative<NetworkScenario>(parsed));
    return std::get<NetworkScenario>(parsed);
}

SweepSpec parse_sweep(const std::string& text) {
    auto parsed = parse_scenario_text(text);
    REQUIRE(std::holds_alternative<SweepSpec>(parsed));
    return std::get<SweepSpec>(parsed);
}

}  // namespace

TEST_CASE("scenario io: parses and expands a valid scenario") {
    const NetworkScenario scenario = parse_scenario(kValidScenario);
    REQUIRE(scenario.switches.size() == 4);
    REQUIRE(scenario.switches[0].lambda == 20000.0);
    REQUIRE(scenario.switches[2].service.p_packet_in == 0.1);
    REQUIRE(scenario.switches[3].lambda == 5000.0);
    REQUIRE(scenario.controller.mu_c == 256000.0);
}

TEST_CASE("scenario io: unknown keys are rejected with their path") {
    const std::string text = R"({
      "switches": [{"lambda": 20000, "p_packet_in": 0.1, "mu1": 32000, "mu2": 64000,
                    "mu3": 9}],
      "controller": {"mu_c": 256000}
    })";
    try {
        parse_scenario_text(text);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        REQUIRE(std::string(e.what()).find("mu3") != std::string::npos);
        REQUIRE(std::string(e.what()).find("/switches/0") != std::string::npos);
    }
}

TEST_CASE("scenario io: malformed JSON reports line and column") {
    const std::string text = "{\n  \"switches\": [,]\n}";
    try {
        parse_scenario_text(text, "bad.json");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        REQUIRE(e.line() == 2);
        REQUIRE(e.column() > 0);
        REQUIRE(std::string(e.what()).find("bad.json:2:") != std::string::npos);
    }
}

TEST_CASE("scenario io: zero arrival rate names the switch index") {
    const std::string text = R"({
      "switches": [
        {"lambda": 20000, "p_packet_in": 0.1, "mu1": 32000, "mu2": 64000},
        {"lambda": 0, "p_packet_in": 0.1, "mu1": 32000, "mu2": 64000}
      ],
      "controller": {"mu_c": 256000}
    })";
    try {
        parse_scenario_text(text);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        REQUIRE(std::string(e.what()).find("switch[1]") != std::string::npos);
        REQUIRE(std::string(e.what()).find("lambda") != std::string::npos);
    }
}

TEST_CASE("scenario io: out-of-range probability is a validation error") {
    const std::string text = R"({
      "switches": [{"lambda": 20000, "p_packet_in": 1.2, "mu1": 32000, "mu2": 64000}],
      "controller": {"mu_c": 256000}
    })";
    try {
        parse_scenario_text(text);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        REQUIRE(std::string(e.what()).find("probability out of range") != std::string::npos);
    }
}

TEST_CASE("scenario io: an unstable scenario fails full validation") {
    const std::string text = R"({
      "switches": [{"lambda": 33000, "p_packet_in": 1, "mu1": 32000, "mu2": 64000}],
      "controller": {"mu_c": 256000}
    })";
    REQUIRE_THROWS_AS(parse_scenario_text(text), ValidationError);
}

TEST_CASE("scenario io: missing file is an io error") {
    REQUIRE_THROWS_AS(parse_scenario_file("/nonexistent/path/to/scenario.json"), IoError);
}

TEST_CASE("scenario io: round trip is exact") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> prob(0.0, 1.0);
    std::uniform_real_distribution<double> rate(100.0, 500000.0);
    std::uniform_real_distribution<double> util(0.05, 0.95);
    std::uniform_int_distribution<int> count(1, 8);

    for (int trial = 0; trial < 50; ++trial) {
        NetworkScenario scenario;
        const int n = count(rng);
        for (int i = 0; i < n; ++i) {
            HyperExpService svc{prob(rng), rate(rng), rate(rng)};
            const double lambda = util(rng) / svc.mean_service_time();
            scenario.switches.push_back({lambda, svc});
        }
        scenario.controller.mu_c = aggregate_packet_in_rate(scenario) * 2.0 + rate(rng);

        const NetworkScenario back = parse_scenario(emit_scenario(scenario));
        REQUIRE(back == scenario);
    }
}

TEST_CASE("scenario io: preset sweep file matches the built-in preset") {
    const SweepSpec fig8 = parse_sweep(R"({"preset": "fig8"})");
    const SweepSpec builtin = preset_spec(SweepPreset::fig8);
    REQUIRE(fig8.preset == SweepPreset::fig8);
    REQUIRE(fig8.variable == SweptVariable::p_packet_in);
    REQUIRE(fig8.start == 0.0);
    REQUIRE(fig8.stop == 1.0);
    REQUIRE(fig8.step == 0.05);
    REQUIRE(fig8.base == builtin.base);
    REQUIRE(fig8.lambda_series == builtin.lambda_series);
}

TEST_CASE("scenario io: sweep file overrides preset fields") {
    const SweepSpec spec = parse_sweep(R"({
      "preset": "fig5",
      "sweep": {"step": 0.25, "outputs": "both", "sim_packets": 4000, "seed": 7}
    })");
    REQUIRE(spec.step == 0.25);
    REQUIRE(spec.outputs == SweepOutputs::both);
    REQUIRE(spec.sim_packets == 4000);
    REQUIRE(spec.seed == 7);
    // untouched fields keep the preset values
    REQUIRE(spec.stop == 1.0);
    REQUIRE(spec.lambda_series == std::vector<double>{20000.0, 25000.0, 30000.0});
}

TEST_CASE("scenario io: custom sweep needs a scenario block") {
    REQUIRE_THROWS_AS(parse_scenario_text(R"({"sweep": {"variable": "lambda"}})"), ParseError);

    const SweepSpec spec = parse_sweep(R"({
      "sweep": {"variable": "lambda", "start": 10000, "stop": 30000, "step": 5000},
      "scenario": {
        "switches": [{"lambda": 1, "p_packet_in": 0.1, "mu1": 32000, "mu2": 64000}],
        "controller": {"mu_c": 256000}
      }
    })");
    REQUIRE(spec.preset == SweepPreset::custom);
    REQUIRE(spec.variable == SweptVariable::lambda);
    REQUIRE(spec.point_count() == 5);
}

TEST_CASE("scenario io: structural defects in fixed sweep fields fail at parse") {
    // mu1 = 0 is not swept, so the sweep can never produce a valid point
    REQUIRE_THROWS_AS(parse_scenario_text(R"({
      "sweep": {"variable": "p_packet_in", "start": 0, "stop": 1, "step": 0.5},
      "scenario": {
        "switches": [{"lambda": 20000, "p_packet_in": 0.1, "mu1": 0, "mu2": 64000}],
        "controller": {"mu_c": 256000}
      }
    })"),
                      ValidationError);

    // a swept lambda may start from an invalid base value
    const SweepSpec ok = parse_sweep(R"({
      "sweep": {"variable": "lambda", "start": 1000, "stop": 2000, "step": 500},
      "scenario": {
        "switches": [{"lambda": 0, "p_packet_in": 0.1, "mu1": 32000, "mu2": 64000}],
        "controller": {"mu_c": 256000}
      }
    })");
    REQUIRE(ok.variable == SweptVariable::lambda);
}

TEST_CASE("scenario io: sweep validation catches bad ranges") {
    REQUIRE_THROWS_AS(parse_scenario_text(R"({
      "preset": "fig5",
      "sweep": {"step": -0.1}
    })"),
                      ParseError);
    REQUIRE_THROWS_AS(parse_scenario_text(R"({
      "preset": "fig5",
      "sweep": {"start": 2, "stop": 1}
    })"),
                      ParseError);
    REQUIRE_THROWS_AS(parse_scenario_text(R"({"preset": "fig9"})"), ParseError);
}
