#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <thread>

#include "gravphase/gravphase.h"

namespace {

const char* kScenario = R"({
  "species": {"preset": "cs133"},
  "environment": {"g": 9.8},
  "sequence": {"kappa": 1.4748e7, "T": 0.1}
})";

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

} // namespace

TEST_CASE("version strings") {
    CHECK(std::string(gp_version()) == "0.1.0");
    CHECK(std::string(gp_constants_version()) == "CODATA-2018");
    CHECK(std::string(gp_status_name(GP_ERR_CONFIG)) == "config");
}

TEST_CASE("scenario lifecycle and phase breakdown") {
    gp_scenario* s = nullptr;
    REQUIRE(gp_scenario_parse(kScenario, &s) == GP_OK);
    REQUIRE(s != nullptr);
    gp_phase_breakdown b{};
    REQUIRE(gp_scenario_phase(s, &b) == GP_OK);
    CHECK(rel(b.observable, -1445304.0) <= 1e-9);
    CHECK(std::abs(b.propagation) <= 1e-9);
    CHECK(b.differential.total == doctest::Approx(b.differential.potential + b.differential.kinetic +
                                                  b.differential.laser + b.differential.internal));
    const char* echo = nullptr;
    REQUIRE(gp_scenario_echo(s, &echo) == GP_OK);
    CHECK(std::strstr(echo, "\"kappa\"") != nullptr);
    CHECK(gp_scenario_set_seed(s, 12) == GP_OK);
    REQUIRE(gp_scenario_echo(s, &echo) == GP_OK);
    CHECK(std::strstr(echo, "\"seed\": 12") != nullptr);
    gp_scenario_free(s);
    gp_scenario_free(nullptr);
}

TEST_CASE("errors carry status, message and exit code") {
    gp_scenario* s = nullptr;
    CHECK(gp_scenario_parse("{\"environment\": {\"g\": 9.8}, \"oops\": 1}", &s) == GP_ERR_CONFIG);
    CHECK(s == nullptr);
    CHECK(std::string(gp_last_error_message()).find("oops") != std::string::npos);
    CHECK(gp_exit_code(GP_ERR_CONFIG) == 2);
    CHECK(gp_exit_code(GP_ERR_FIT_FAILURE) == 3);
    CHECK(gp_exit_code(GP_OK) == 0);

    CHECK(gp_scenario_load("/nonexistent/config.json", &s) == GP_ERR_IO);
    CHECK(gp_scenario_parse(nullptr, &s) == GP_ERR_NULL_ARGUMENT);

    double out = 0.0;
    CHECK(gp_de_broglie_wavelength(2.207e-25, 0.0, &out) == GP_ERR_DIVIDE_BY_ZERO);
    CHECK(gp_compton_frequency(NAN, &out) == GP_ERR_INVALID_QUANTITY);
    CHECK(gp_invert_g(1.0, 0.0, 0.1, 1.0, &out) == GP_ERR_UNIDENTIFIABLE);
    CHECK(gp_mz_phase(1.0, 1.0, 1.0, 1.0, nullptr) == GP_ERR_NULL_ARGUMENT);
}

TEST_CASE("error messages are per thread") {
    double out = 0.0;
    CHECK(gp_de_broglie_wavelength(1.0, 0.0, &out) != GP_OK);
    const std::string here = gp_last_error_message();
    std::string there;
    std::thread t([&] { there = gp_last_error_message(); });
    t.join();
    CHECK_FALSE(here.empty());
    CHECK(there.empty());
}

TEST_CASE("run commands") {
    gp_scenario* s = nullptr;
    REQUIRE(gp_scenario_parse(kScenario, &s) == GP_OK);
    CHECK(gp_command_count() == 8);
    CHECK(std::string(gp_command_name(0)) == "phase");
    CHECK(gp_command_name(99) == nullptr);

    gp_result* r = nullptr;
    REQUIRE(gp_run(s, "verify", nullptr, &r) == GP_OK);
    CHECK(gp_result_exit_code(r) == 0);
    REQUIRE(gp_result_file_count(r) == 1);
    CHECK(std::string(gp_result_file_name(r, 0)) == "verify.json");
    size_t len = 0;
    const char* content = gp_result_file_content(r, 0, &len);
    CHECK(len == std::strlen(content));
    CHECK(std::string(gp_result_summary(r)).rfind("PASS", 0) == 0);
    CHECK(gp_result_file_name(r, 1) == nullptr);
    gp_result_free(r);

    r = nullptr;
    CHECK(gp_run(s, "sweep-eta", nullptr, &r) == GP_ERR_CONFIG);
    CHECK(r == nullptr);
    CHECK(gp_run(s, "nope", nullptr, &r) == GP_ERR_CONFIG);

    REQUIRE(gp_run(s, "phase", "2026-01-01T00:00:00Z", &r) == GP_OK);
    CHECK(std::string(gp_result_file_content(r, 0, nullptr)).find("2026-01-01T00:00:00Z") != std::string::npos);
    gp_result_free(r);
    gp_scenario_free(s);
}

TEST_CASE("scalar functions") {
    double v = 0.0;
    REQUIRE(gp_compton_wavelength(2.207e-25, &v) == GP_OK);
    CHECK(rel(v, 1.0014585837354931e-17) <= 1e-12);
    REQUIRE(gp_compton_frequency(1.0, &v) == GP_OK);
    CHECK(rel(v, 8.522465361751015e50) <= 1e-12);
    REQUIRE(gp_de_broglie_wavelength(2.207e-25, 0.03, &v) == GP_OK);
    CHECK(rel(v, 1.0007657680108745e-07) <= 1e-12);
    REQUIRE(gp_time_dilation(9.81, 1.0, 0.0, 1.0, &v) == GP_OK);
    CHECK(rel(v, 1.0915097049885998e-16) <= 1e-12);
    REQUIRE(gp_mz_phase(1.4748e7, 9.8, 0.1, 1.0, &v) == GP_OK);
    CHECK(rel(v, -1445304.0) <= 1e-15);
    double g = 0.0;
    REQUIRE(gp_invert_g(v, 1.4748e7, 0.1, 1.0, &g) == GP_OK);
    CHECK(rel(g, 9.8) <= 1e-12);
    double pe = 0.0, pg = 0.0;
    REQUIRE(gp_port_population(M_PI, &pe, &pg) == GP_OK);
    CHECK(pe == doctest::Approx(1.0));
    CHECK(pe + pg == 1.0);
    REQUIRE(gp_sensitivity_ratio(2.207e-25, 3.52e14, &v) == GP_OK);
    CHECK(v == doctest::Approx(8.504e10).epsilon(1e-3));
}
