#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include "gravphase/app.hpp"
#include "support.hpp"

using namespace gravphase;
using namespace gravphase::app;
using nlohmann::json;

namespace {

const char* kDefault = R"({
  "species": {"preset": "cs133"},
  "environment": {"model": "uniform", "g": 9.8},
  "sequence": {"kappa": 1.4748e7, "T": 0.1},
  "run": {"seed": 7}
})";

Errc code_of(const std::string& text) {
    try {
        parse_scenario(text);
    } catch (const Error& e) {
        return e.code();
    }
    return Errc::verification;  // sentinel: no error
}

std::string message_of(const std::string& text) {
    try {
        parse_scenario(text);
    } catch (const Error& e) {
        return e.what();
    }
    return {};
}

const OutputFile& file(const CommandResult& r, const std::string& name) {
    for (const auto& f : r.files) {
        if (f.name == name) return f;
    }
    throw std::runtime_error("missing output " + name);
}

} // namespace

TEST_CASE("parse the default scenario") {
    const ScenarioConfig c = parse_scenario(kDefault);
    CHECK(c.species.name == "cs133");
    CHECK(c.env.g().value() == 9.8);
    CHECK(*c.kappa == 1.4748e7);
    CHECK(*c.t == 0.1);
    CHECK(c.seed == 7);
    CHECK(c.n_steps == kDefaultSimpsonSteps);
    const MzScenario mz = c.mz();
    CHECK(mz.t.value() == 0.1);
}

TEST_CASE("kappa is derived from the optical wavelength when absent") {
    const ScenarioConfig c = parse_scenario(R"({"environment": {"g": 9.8}, "sequence": {"T": 0.1}})");
    CHECK(gptest::rel(*c.kappa, 2.0 * 2.0 * std::numbers::pi / 852.34727582e-9) <= 1e-15);
    const ScenarioConfig w =
        parse_scenario(R"({"environment": {"g": 9.8}, "sequence": {"T": 0.1, "wavelength": 1e-6, "harmonic_order": 1}})");
    CHECK(gptest::rel(*w.kappa, 2.0 * std::numbers::pi / 1e-6) <= 1e-15);
}

TEST_CASE("species overrides") {
    const ScenarioConfig c =
        parse_scenario(R"({"species": {"preset": "rb87", "eta": 1.001}, "environment": {"g": 9.8}})");
    CHECK(c.species.name == "rb87");
    CHECK(c.species.eta == 1.001);
    const ScenarioConfig custom = parse_scenario(
        R"({"species": {"mass": 1.675e-27, "hyperfine_hz": 1e9, "optical_wavelength": 5e-7}, "environment": {"g": 1}})");
    CHECK(custom.species.inertial_mass.value() == 1.675e-27);
    CHECK(code_of(R"({"species": {"preset": "xx"}, "environment": {"g": 1}})") == Errc::config);
    CHECK(code_of(R"({"species": {"mass": -1, "hyperfine_hz": 1, "optical_wavelength": 1}, "environment": {"g": 1}})") !=
          Errc::verification);
}

TEST_CASE("config errors name the field") {
    CHECK(message_of("{not json").find("not valid JSON") != std::string::npos);
    CHECK(message_of(R"({"environment": {"g": 9.8}, "sequence": {"T": 0.1, "typo": 1}})").find("sequence.typo") !=
          std::string::npos);
    CHECK(message_of(R"({"environment": {"g": "fast"}})").find("environment.g") != std::string::npos);
    CHECK(message_of(R"({"sequence": {"T": 0.1}})").find("environment") != std::string::npos);
    CHECK(message_of(R"({"environment": {"g": 9.8}, "sequence": {"T": -1}})").find("sequence.T") != std::string::npos);
    CHECK(message_of(R"({"environment": {"g": 9.8}, "run": {"n_steps": 1}})").find("run.n_steps") !=
          std::string::npos);
    CHECK(code_of(R"({"environment": {"g": 9.8}, "bogus": {}})") == Errc::config);

    const ScenarioConfig no_t = parse_scenario(R"({"environment": {"g": 9.8}, "sequence": {"kappa": 1e7}})");
    try {
        no_t.mz();
        FAIL("expected throw");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::config);
        CHECK(std::string(e.what()).find("sequence.T") != std::string::npos);
    }
}

TEST_CASE("exit codes") {
    CHECK(exit_code_for(Errc::config) == 2);
    CHECK(exit_code_for(Errc::invalid_quantity) == 2);
    CHECK(exit_code_for(Errc::io) == 2);
    CHECK(exit_code_for(Errc::fit_failure) == 3);
    CHECK(exit_code_for(Errc::resolution) == 3);
}

TEST_CASE("echo round-trips") {
    const char* full = R"({
      "species": {"preset": "rb87", "eta": 0.999},
      "environment": {"g": 9.81, "potential_offset": 12.5},
      "sequence": {"kappa": 1.61e7, "T": 0.05, "laser_phases": [0.1, 0.2, 0.3], "pi_pulse_swap": false},
      "initial": {"x0": 0.25, "v0": -0.1},
      "run": {
        "n_steps": 200, "seed": 99,
        "scan": {"variable": "T", "start": 0.01, "stop": 0.05, "count": 5},
        "fringes": {"v1": 0.0, "v2": 0.01, "window": 1e-5, "samples": 2001},
        "clock": {"pairs": [[1, 0], [2, 1]], "duration": 3, "nu_hz": 1e9},
        "invert": {"delta_phase": -1000.0, "g_reference": 9.8, "free_contrast": true,
                   "scan": [[0, 0.1], [1, 0.2], [2, 0.3], [3, 0.4], [4, 0.5]],
                   "monte_carlo": {"trials": 10, "sigma": 0.01, "points": 16, "ladder": [0.01, 1]},
                   "ladder": {"points": 24, "ladder": [0.1, 1]}},
        "eta_grid": [0.9, 1.0, 1.1],
        "sensitivity": {"optical_nu_hz": 3.8e14},
        "trajectory_dt": 0.001
      }
    })";
    const ScenarioConfig c = parse_scenario(full);
    const std::string echo = echo_scenario(c);
    const ScenarioConfig again = parse_scenario(echo);
    CHECK(echo_scenario(again) == echo);
    CHECK(again.species.eta == 0.999);
    CHECK(again.env.gauge_offset().value() == 12.5);
    CHECK(again.scan->values.size() == 5);
    CHECK(again.scan->values.back() == 0.05);
    CHECK_FALSE(again.pi_pulse_swap);
    CHECK(again.invert.monte_carlo->trials == 10);
    CHECK(again.invert.ladder.points == 24);

    const ScenarioConfig pm = parse_scenario(R"({"environment": {"model": "point-mass", "gm": 3.986e14, "r0": 1}})");
    CHECK(echo_scenario(parse_scenario(echo_scenario(pm))) == echo_scenario(pm));
}

TEST_CASE("phase command") {
    const ScenarioConfig c = parse_scenario(kDefault);
    const CommandResult r = run_command("phase", c);
    CHECK(r.exit_code == 0);
    const json j = json::parse(file(r, "phase.json").content);
    CHECK(gptest::rel(j["phase"]["observable"].get<double>(), -1445304.0) <= 1e-9);
    CHECK(j["provenance"]["constants_version"] == "CODATA-2018");
    CHECK_FALSE(j["provenance"].contains("timestamp"));
    CHECK(j["provenance"]["scenario_hash"].get<std::string>().size() == 16);
    // The echoed scenario reproduces the run.
    const ScenarioConfig echoed = parse_scenario(j["scenario"].dump());
    CHECK(run_command("phase", echoed).files[0].content == r.files[0].content);

    RunOptions stamped;
    stamped.timestamp = "2026-01-01T00:00:00Z";
    const json s = json::parse(run_command("phase", c, stamped).files[0].content);
    CHECK(s["provenance"]["timestamp"] == "2026-01-01T00:00:00Z");
}

TEST_CASE("verify command passes on the default scenario and is deterministic") {
    const ScenarioConfig c = parse_scenario(kDefault);
    const CommandResult a = run_command("verify", c);
    const CommandResult b = run_command("verify", c);
    CHECK(a.exit_code == 0);
    CHECK(a.files[0].content == b.files[0].content);
    const json j = json::parse(a.files[0].content);
    CHECK(j["equivalence"]["passed"] == true);
    CHECK(j["fringe_fall"]["passed"] == true);
    CHECK(j["equivalence"]["max_deviation"].get<double>() <= 1e-9);
}

TEST_CASE("scan command") {
    const ScenarioConfig c = parse_scenario(
        R"({"environment": {"g": 9.8}, "sequence": {"kappa": 1.4748e7, "T": 0.1},
            "run": {"scan": {"variable": "phi_L", "values": [0, 1, 2]}}})");
    const CommandResult r = run_command("scan", c);
    const std::string& csv = file(r, "scan.csv").content;
    CHECK(csv.rfind("scan_value,P_e,P_g\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
    CHECK_THROWS_AS(run_command("scan", parse_scenario(kDefault)), Error);
}

TEST_CASE("clock-compare command") {
    const ScenarioConfig c =
        parse_scenario(R"({"environment": {"g": 9.81}, "run": {"clock": {"pairs": [[1, 0]], "duration": 1}}})");
    const std::string csv = file(run_command("clock-compare", c), "clock_compare.csv").content;
    CHECK(csv.find("1.0915097049885998e-16") != std::string::npos);
}

TEST_CASE("fringes command") {
    const ScenarioConfig c = parse_scenario(kDefault);
    const CommandResult r = run_command("fringes", c);
    const json j = json::parse(file(r, "fringes.json").content);
    CHECK(gptest::rel(j["fringes"]["spacing"].get<double>(), 2.0 * std::numbers::pi / 1.4748e7) <= 1e-3);
    CHECK(j["fringes"]["spacing_over_compton"].get<double>() > 1e9);
}

TEST_CASE("invert command variants") {
    const ScenarioConfig closed = parse_scenario(
        R"({"environment": {"g": 9.8}, "sequence": {"kappa": 1.4748e7, "T": 0.1}, "run": {"invert": {"delta_phase": -1445304}}})");
    const json a = json::parse(run_command("invert", closed).files[0].content);
    CHECK(a["method"] == "closed_form");
    CHECK(gptest::rel(a["estimate"]["g_hat"].get<double>(), 9.8) <= 1e-12);

    const json b = json::parse(run_command("invert", parse_scenario(kDefault)).files[0].content);
    CHECK(b["method"] == "synthetic_ladder");
    CHECK(gptest::rel(b["estimate"]["g_hat"].get<double>(), 9.8) <= 1e-9);

    const ScenarioConfig mc = parse_scenario(
        R"({"environment": {"g": 9.8}, "sequence": {"kappa": 1.4748e7, "T": 0.1},
            "run": {"seed": 5, "invert": {"monte_carlo": {"trials": 5}}}})");
    const CommandResult r = run_command("invert", mc);
    CHECK(std::count(file(r, "invert_mc.csv").content.begin(), file(r, "invert_mc.csv").content.end(), '\n') == 6);
    CHECK(run_command("invert", mc).files[1].content == r.files[1].content);
}

TEST_CASE("sweep-eta and sensitivity commands") {
    ScenarioConfig c = parse_scenario(kDefault);
    CHECK_THROWS_AS(run_command("sweep-eta", c), Error);
    c.eta_grid = {0.9, 1.0, 1.1};
    const CommandResult r = run_command("sweep-eta", c);
    CHECK(r.exit_code == 0);
    const json s = json::parse(file(r, "sweep_eta.json").content);
    CHECK(s["sweep"]["passed"] == true);

    const json sens = json::parse(run_command("sensitivity", c).files[0].content);
    CHECK(sens["sensitivity"]["ratio"].get<double>() > 1e9);
    CHECK(sens["sensitivity"]["ratio"].get<double>() < 1e11);
}

TEST_CASE("unknown command") { CHECK_THROWS_AS(run_command("launch", parse_scenario(kDefault)), Error); }

TEST_CASE("point-mass environments are rejected for interferometer commands") {
    const ScenarioConfig c = parse_scenario(
        R"({"environment": {"model": "point-mass", "gm": 3.986e14}, "sequence": {"kappa": 1e7, "T": 0.1}})");
    CHECK_THROWS_AS(c.mz(), Error);
}
