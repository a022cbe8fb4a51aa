#include "gravphase/gravphase.h"

#include <exception>
#include <string>
#include <vector>

#include "gravphase/app.hpp"
#include "gravphase/clocks.hpp"

using namespace gravphase;

struct gp_scenario {
    app::ScenarioConfig config;
    std::string echo;
};

struct gp_result {
    app::CommandResult result;
};

namespace {

thread_local std::string last_error;

gp_status status_for(Errc code) noexcept {
    switch (code) {
    case Errc::invalid_quantity: return GP_ERR_INVALID_QUANTITY;
    case Errc::domain: return GP_ERR_DOMAIN;
    case Errc::divide_by_zero: return GP_ERR_DIVIDE_BY_ZERO;
    case Errc::range: return GP_ERR_RANGE;
    case Errc::config: return GP_ERR_CONFIG;
    case Errc::unsupported_sequence: return GP_ERR_UNSUPPORTED_SEQUENCE;
    case Errc::unidentifiable: return GP_ERR_UNIDENTIFIABLE;
    case Errc::fit_failure: return GP_ERR_FIT_FAILURE;
    case Errc::resolution: return GP_ERR_RESOLUTION;
    case Errc::io: return GP_ERR_IO;
    case Errc::verification: return GP_ERR_VERIFICATION;
    }
    return GP_ERR_INTERNAL;
}

template <class F>
gp_status guarded(F&& f) noexcept {
    try {
        last_error.clear();
        f();
        return GP_OK;
    } catch (const Error& e) {
        last_error = e.what();
        return status_for(e.code());
    } catch (const std::exception& e) {
        last_error = e.what();
        return GP_ERR_INTERNAL;
    } catch (...) {
        last_error = "unknown error";
        return GP_ERR_INTERNAL;
    }
}

gp_status null_argument(const char* name) noexcept {
    last_error = std::string("null argument: ") + name;
    return GP_ERR_NULL_ARGUMENT;
}

void fill(gp_phase_channels& out, const PhaseChannels& ch) {
    out = {ch.potential, ch.kinetic, ch.laser, ch.internal, ch.total()};
}

} // namespace

extern "C" {

const char* gp_version(void) { return app::kArtifactVersion; }
const char* gp_constants_version(void) { return kConstantsVersion; }
const char* gp_last_error_message(void) { return last_error.c_str(); }

const char* gp_status_name(gp_status status) {
    switch (status) {
    case GP_OK: return "ok";
    case GP_ERR_NULL_ARGUMENT: return "null_argument";
    case GP_ERR_INVALID_QUANTITY: return "invalid_quantity";
    case GP_ERR_DOMAIN: return "domain";
    case GP_ERR_DIVIDE_BY_ZERO: return "divide_by_zero";
    case GP_ERR_RANGE: return "range";
    case GP_ERR_CONFIG: return "config";
    case GP_ERR_UNSUPPORTED_SEQUENCE: return "unsupported_sequence";
    case GP_ERR_UNIDENTIFIABLE: return "unidentifiable";
    case GP_ERR_FIT_FAILURE: return "fit_failure";
    case GP_ERR_RESOLUTION: return "resolution";
    case GP_ERR_IO: return "io";
    case GP_ERR_VERIFICATION: return "verification";
    case GP_ERR_INTERNAL: return "internal";
    }
    return "unknown";
}

int gp_exit_code(gp_status status) {
    switch (status) {
    case GP_OK: return 0;
    case GP_ERR_NULL_ARGUMENT:
    case GP_ERR_INVALID_QUANTITY:
    case GP_ERR_CONFIG:
    case GP_ERR_IO:
        return 2;
    default:
        return 3;
    }
}

gp_status gp_scenario_load(const char* path, gp_scenario** out) {
    if (!path) return null_argument("path");
    if (!out) return null_argument("out");
    *out = nullptr;
    return guarded([&] { *out = new gp_scenario{app::load_scenario(path), {}}; });
}

gp_status gp_scenario_parse(const char* json_text, gp_scenario** out) {
    if (!json_text) return null_argument("json_text");
    if (!out) return null_argument("out");
    *out = nullptr;
    return guarded([&] { *out = new gp_scenario{app::parse_scenario(json_text), {}}; });
}

void gp_scenario_free(gp_scenario* scenario) { delete scenario; }

gp_status gp_scenario_set_seed(gp_scenario* scenario, uint64_t seed) {
    if (!scenario) return null_argument("scenario");
    scenario->config.seed = seed;
    scenario->echo.clear();
    return GP_OK;
}

gp_status gp_scenario_echo(gp_scenario* scenario, const char** json_text) {
    if (!scenario) return null_argument("scenario");
    if (!json_text) return null_argument("json_text");
    return guarded([&] {
        if (scenario->echo.empty()) scenario->echo = app::echo_scenario(scenario->config);
        *json_text = scenario->echo.c_str();
    });
}

gp_status gp_scenario_phase(const gp_scenario* scenario, gp_phase_breakdown* out) {
    if (!scenario) return null_argument("scenario");
    if (!out) return null_argument("out");
    return guarded([&] {
        const PhaseBreakdown b = scenario->config.mz().run();
        fill(out->arm_a, b.arm_a);
        fill(out->arm_b, b.arm_b);
        fill(out->differential, b.differential);
        out->propagation = b.propagation;
        out->optical_offset = b.optical_offset;
        out->observable = b.observable();
    });
}

size_t gp_command_count(void) { return app::command_names().size(); }

const char* gp_command_name(size_t index) {
    const auto& names = app::command_names();
    return index < names.size() ? names[index].c_str() : nullptr;
}

gp_status gp_run(const gp_scenario* scenario, const char* command, const char* timestamp, gp_result** out) {
    if (!scenario) return null_argument("scenario");
    if (!command) return null_argument("command");
    if (!out) return null_argument("out");
    *out = nullptr;
    return guarded([&] {
        app::RunOptions opts;
        if (timestamp) opts.timestamp = timestamp;
        *out = new gp_result{app::run_command(command, scenario->config, opts)};
    });
}

void gp_result_free(gp_result* result) { delete result; }

int gp_result_exit_code(const gp_result* result) { return result ? result->result.exit_code : 3; }

const char* gp_result_summary(const gp_result* result) { return result ? result->result.summary.c_str() : nullptr; }

size_t gp_result_file_count(const gp_result* result) { return result ? result->result.files.size() : 0; }

const char* gp_result_file_name(const gp_result* result, size_t index) {
    if (!result || index >= result->result.files.size()) return nullptr;
    return result->result.files[index].name.c_str();
}

const char* gp_result_file_content(const gp_result* result, size_t index, size_t* length) {
    if (!result || index >= result->result.files.size()) return nullptr;
    const std::string& s = result->result.files[index].content;
    if (length) *length = s.size();
    return s.c_str();
}

gp_status gp_compton_frequency(double mass, double* omega) {
    if (!omega) return null_argument("omega");
    return guarded([&] { *omega = compton_frequency(Mass(mass)).value(); });
}

gp_status gp_compton_wavelength(double mass, double* lambda) {
    if (!lambda) return null_argument("lambda");
    return guarded([&] { *lambda = compton_wavelength(Mass(mass)).value(); });
}

gp_status gp_de_broglie_wavelength(double mass, double velocity, double* lambda) {
    if (!lambda) return null_argument("lambda");
    return guarded([&] { *lambda = de_broglie_wavelength(Mass(mass), Velocity(velocity)).value(); });
}

gp_status gp_time_dilation(double g, double x1, double x2, double duration, double* delta_t) {
    if (!delta_t) return null_argument("delta_t");
    return guarded([&] {
        const auto env = GravityEnvironment::uniform(GravAccel(g));
        *delta_t = time_dilation(env, Length(x1), Length(x2), Time(duration)).value();
    });
}

gp_status gp_mz_phase(double kappa, double g, double t, double eta, double* phase) {
    if (!phase) return null_argument("phase");
    return guarded([&] { *phase = closed_form_mz_phase(Wavenumber(kappa), GravAccel(g), Time(t), eta).value(); });
}

gp_status gp_invert_g(double delta_phase, double kappa, double t, double eta, double* g_hat) {
    if (!g_hat) return null_argument("g_hat");
    return guarded([&] { *g_hat = invert_g(Phase(delta_phase), Wavenumber(kappa), Time(t), eta).g_hat; });
}

gp_status gp_port_population(double delta_phase, double* excited, double* ground) {
    if (!excited) return null_argument("excited");
    if (!ground) return null_argument("ground");
    return guarded([&] {
        const PortPopulations p = port_population(Phase(delta_phase));
        *excited = p.excited;
        *ground = p.ground;
    });
}

gp_status gp_sensitivity_ratio(double mass, double optical_nu, double* ratio) {
    if (!ratio) return null_argument("ratio");
    return guarded([&] {
        AtomSpecies s = cesium133();
        s.name = "custom";
        s.inertial_mass = Mass(mass);
        *ratio = sensitivity_ratio(s, FrequencyHz(optical_nu)).ratio;
    });
}

} // extern "C"
