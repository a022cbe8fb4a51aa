#include "gravphase/app.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "gravphase/clocks.hpp"
#include "gravphase/io.hpp"

namespace gravphase::app {

using json = nlohmann::json;

namespace {

[[noreturn]] void config_error(const std::string& msg) { throw Error(Errc::config, msg); }

std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
}

// A JSON object section with path-aware accessors. Unknown keys are rejected.
class Section {
public:
    Section(const json& node, std::string path, std::set<std::string> allowed) : node_(node), path_(std::move(path)) {
        if (!node_.is_object()) {
            config_error(path_ + " must be an object");
        }
        for (const auto& [key, _] : node_.items()) {
            if (!allowed.count(key)) {
                config_error("unknown field " + join(path_, key));
            }
        }
    }

    bool has(const std::string& key) const { return node_.contains(key) && !node_.at(key).is_null(); }
    const json& at(const std::string& key) const { return node_.at(key); }
    std::string field(const std::string& key) const { return join(path_, key); }

    double number(const std::string& key) const {
        if (!has(key)) {
            config_error("missing field " + field(key));
        }
        return as_number(at(key), field(key));
    }
    std::optional<double> opt_number(const std::string& key) const {
        return has(key) ? std::optional<double>(number(key)) : std::nullopt;
    }
    std::uint64_t count(const std::string& key) const {
        const json& v = at(key);
        if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
            config_error(field(key) + " must be a non-negative integer");
        }
        return v.get<std::uint64_t>();
    }
    std::string text(const std::string& key) const {
        if (!at(key).is_string()) {
            config_error(field(key) + " must be a string");
        }
        return at(key).get<std::string>();
    }
    bool flag(const std::string& key) const {
        if (!at(key).is_boolean()) {
            config_error(field(key) + " must be a boolean");
        }
        return at(key).get<bool>();
    }
    std::vector<double> numbers(const std::string& key) const {
        const json& v = at(key);
        if (!v.is_array()) {
            config_error(field(key) + " must be an array of numbers");
        }
        std::vector<double> out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            out.push_back(as_number(v[i], field(key) + "[" + std::to_string(i) + "]"));
        }
        return out;
    }
    Section sub(const std::string& key, std::set<std::string> allowed) const {
        return Section(at(key), field(key), std::move(allowed));
    }

    static double as_number(const json& v, const std::string& name) {
        if (!v.is_number()) {
            config_error(name + " must be a number");
        }
        const double d = v.get<double>();
        if (!std::isfinite(d)) {
            config_error(name + " must be finite");
        }
        return d;
    }

private:
    const json& node_;
    std::string path_;
};

void require(bool ok, const std::string& msg) {
    if (!ok) {
        config_error(msg);
    }
}

AtomSpecies parse_species(const Section& root) {
    if (!root.has("species")) {
        return cesium133();
    }
    const Section s = root.sub("species", {"preset", "name", "mass", "eta", "hyperfine_hz", "optical_wavelength"});
    AtomSpecies sp;
    if (s.has("preset")) {
        const auto preset = species_preset(s.text("preset"));
        require(preset.has_value(), "species.preset: unknown species '" + s.text("preset") + "'");
        sp = *preset;
    } else {
        require(s.has("mass"), "missing field species.mass (or species.preset)");
        require(s.has("hyperfine_hz"), "missing field species.hyperfine_hz (or species.preset)");
        require(s.has("optical_wavelength"), "missing field species.optical_wavelength (or species.preset)");
        sp.name = "custom";
    }
    if (s.has("name")) sp.name = s.text("name");
    if (s.has("mass")) sp.inertial_mass = Mass(s.number("mass"));
    if (s.has("eta")) sp.eta = s.number("eta");
    if (s.has("hyperfine_hz")) sp.hyperfine_splitting = FrequencyHz(s.number("hyperfine_hz"));
    if (s.has("optical_wavelength")) sp.optical_wavelength = Length(s.number("optical_wavelength"));
    sp.validate();
    return sp;
}

GravityEnvironment parse_environment(const Section& root) {
    require(root.has("environment"), "missing section environment");
    const Section e = root.sub("environment", {"model", "g", "potential_offset", "gm", "r0"});
    const std::string model = e.has("model") ? e.text("model") : "uniform";
    if (model == "uniform") {
        require(!e.has("gm") && !e.has("r0"), "environment.gm/r0 only apply to the point-mass model");
        return GravityEnvironment::uniform(GravAccel(e.number("g")),
                                           GravPotential(e.opt_number("potential_offset").value_or(0.0)));
    }
    if (model == "point-mass") {
        require(!e.has("g") && !e.has("potential_offset"), "environment.g only applies to the uniform model");
        const double r0 = e.opt_number("r0").value_or(0.0);
        return GravityEnvironment::point_mass(e.number("gm"), Length(r0));
    }
    config_error("environment.model must be 'uniform' or 'point-mass' (got '" + model + "')");
}

std::vector<double> parse_grid(const Section& s, const std::string& what) {
    if (s.has("values")) {
        require(!s.has("start") && !s.has("stop") && !s.has("count"), what + ": give values or start/stop/count");
        return s.numbers("values");
    }
    const double start = s.number("start");
    const double stop = s.number("stop");
    require(s.has("count"), "missing field " + s.field("count"));
    const std::uint64_t n = s.count("count");
    require(n >= 1, s.field("count") + " must be at least 1");
    const bool endpoint = s.has("endpoint") ? s.flag("endpoint") : true;
    std::vector<double> out;
    for (std::uint64_t i = 0; i < n; ++i) {
        const double denom = endpoint ? static_cast<double>(n > 1 ? n - 1 : 1) : static_cast<double>(n);
        out.push_back(start + (stop - start) * static_cast<double>(i) / denom);
    }
    return out;
}

MonteCarloOptions parse_ladder(const Section& s, MonteCarloOptions base) {
    if (s.has("points")) base.points = s.count("points");
    if (s.has("ladder")) base.ladder_fractions = s.numbers("ladder");
    require(base.points >= 5, s.field("points") + " must be at least 5");
    require(!base.ladder_fractions.empty(), s.field("ladder") + " must not be empty");
    for (double f : base.ladder_fractions) {
        require(f > 0.0, s.field("ladder") + " entries must be positive");
    }
    return base;
}

void parse_run(const Section& root, ScenarioConfig& c) {
    if (!root.has("run")) {
        return;
    }
    const Section r = root.sub("run", {"n_steps", "seed", "scan", "fringes", "clock", "invert", "eta_grid",
                                       "sensitivity", "trajectory_dt"});
    if (r.has("n_steps")) {
        c.n_steps = r.count("n_steps");
        require(c.n_steps >= 2, "run.n_steps must be at least 2");
    }
    if (r.has("seed")) c.seed = r.count("seed");
    if (r.has("scan")) {
        const Section s = r.sub("scan", {"variable", "values", "start", "stop", "count", "endpoint"});
        ScanConfig scan;
        scan.variable = parse_scan_variable(s.text("variable"));
        scan.values = parse_grid(s, "run.scan");
        require(!scan.values.empty(), "run.scan.values must not be empty");
        c.scan = scan;
    }
    if (r.has("fringes")) {
        const Section s = r.sub("fringes", {"v1", "v2", "window", "samples"});
        c.fringes.v1 = s.opt_number("v1");
        c.fringes.v2 = s.opt_number("v2");
        c.fringes.window = s.opt_number("window");
        if (s.has("samples")) c.fringes.samples = s.count("samples");
    }
    if (r.has("clock")) {
        const Section s = r.sub("clock", {"pairs", "duration", "nu_hz"});
        ClockConfig clock;
        require(s.has("pairs"), "missing field run.clock.pairs");
        const json& pairs = s.at("pairs");
        require(pairs.is_array() && !pairs.empty(), "run.clock.pairs must be a non-empty array of [x1, x2]");
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            const std::string name = "run.clock.pairs[" + std::to_string(i) + "]";
            require(pairs[i].is_array() && pairs[i].size() == 2, name + " must be [x1, x2]");
            clock.pairs.emplace_back(Section::as_number(pairs[i][0], name + "[0]"),
                                     Section::as_number(pairs[i][1], name + "[1]"));
        }
        if (s.has("duration")) clock.duration = s.number("duration");
        require(clock.duration >= 0.0, "run.clock.duration must be non-negative");
        clock.nu_hz = s.opt_number("nu_hz");
        require(!clock.nu_hz || *clock.nu_hz > 0.0, "run.clock.nu_hz must be positive");
        c.clock = clock;
    }
    if (r.has("invert")) {
        const Section s = r.sub("invert", {"delta_phase", "scan", "g_reference", "free_contrast", "monte_carlo",
                                           "ladder"});
        c.invert.delta_phase = s.opt_number("delta_phase");
        c.invert.g_reference = s.opt_number("g_reference");
        if (s.has("free_contrast")) c.invert.free_contrast = s.flag("free_contrast");
        if (s.has("scan")) {
            const json& scan = s.at("scan");
            require(scan.is_array(), "run.invert.scan must be an array of [phi_L, P_e]");
            for (std::size_t i = 0; i < scan.size(); ++i) {
                const std::string name = "run.invert.scan[" + std::to_string(i) + "]";
                require(scan[i].is_array() && scan[i].size() == 2, name + " must be [phi_L, P_e]");
                c.invert.scan.push_back({Section::as_number(scan[i][0], name + "[0]"),
                                         Section::as_number(scan[i][1], name + "[1]")});
            }
        }
        if (s.has("ladder")) {
            c.invert.ladder = parse_ladder(s.sub("ladder", {"points", "ladder"}), c.invert.ladder);
        }
        if (s.has("monte_carlo")) {
            const Section m = s.sub("monte_carlo", {"trials", "sigma", "points", "ladder"});
            MonteCarloOptions mc = parse_ladder(m, MonteCarloOptions{});
            if (m.has("trials")) mc.trials = m.count("trials");
            if (m.has("sigma")) mc.sigma = m.number("sigma");
            require(mc.trials >= 1, "run.invert.monte_carlo.trials must be at least 1");
            require(mc.sigma >= 0.0, "run.invert.monte_carlo.sigma must be non-negative");
            c.invert.monte_carlo = mc;
        }
    }
    if (r.has("eta_grid")) c.eta_grid = r.numbers("eta_grid");
    if (r.has("sensitivity")) {
        const Section s = r.sub("sensitivity", {"optical_nu_hz"});
        c.sensitivity_nu_hz = s.opt_number("optical_nu_hz");
        require(!c.sensitivity_nu_hz || *c.sensitivity_nu_hz > 0.0, "run.sensitivity.optical_nu_hz must be positive");
    }
    if (r.has("trajectory_dt")) {
        c.trajectory_dt = r.number("trajectory_dt");
        require(*c.trajectory_dt > 0.0, "run.trajectory_dt must be positive");
    }
}

ScenarioConfig parse_json(const json& doc) {
    const Section root(doc, "", {"species", "environment", "sequence", "initial", "run"});
    ScenarioConfig c;
    c.species = parse_species(root);
    c.env = parse_environment(root);
    if (root.has("sequence")) {
        const Section s = root.sub("sequence", {"kappa", "wavelength", "harmonic_order", "T", "laser_phases",
                                                "pi_pulse_swap"});
        if (s.has("kappa")) {
            require(!s.has("wavelength") && !s.has("harmonic_order"),
                    "sequence: give either kappa or wavelength/harmonic_order");
            c.kappa = s.number("kappa");
        } else {
            const double lambda = s.has("wavelength") ? s.number("wavelength") : c.species.optical_wavelength.value();
            require(lambda > 0.0, "sequence.wavelength must be positive");
            const double order = s.has("harmonic_order") ? static_cast<double>(s.count("harmonic_order")) : 2.0;
            c.kappa = order * 2.0 * std::numbers::pi / lambda;
        }
        require(*c.kappa >= 0.0, "sequence.kappa must be non-negative");
        c.t = s.opt_number("T");
        require(!c.t || *c.t > 0.0, "sequence.T must be positive");
        if (s.has("laser_phases")) {
            const auto phases = s.numbers("laser_phases");
            require(phases.size() == 3, "sequence.laser_phases must have 3 entries");
            std::copy(phases.begin(), phases.end(), c.laser_phases.begin());
        }
        if (s.has("pi_pulse_swap")) c.pi_pulse_swap = s.flag("pi_pulse_swap");
    } else {
        c.kappa = 2.0 * 2.0 * std::numbers::pi / c.species.optical_wavelength.value();
    }
    if (root.has("initial")) {
        const Section s = root.sub("initial", {"x0", "v0"});
        c.x0 = s.opt_number("x0").value_or(0.0);
        c.v0 = s.opt_number("v0").value_or(0.0);
    }
    parse_run(root, c);
    return c;
}

json ladder_json(const MonteCarloOptions& m) {
    return {{"points", m.points}, {"ladder", m.ladder_fractions}};
}

json echo_json(const ScenarioConfig& c) {
    json j;
    j["species"] = {{"name", c.species.name},
                    {"mass", c.species.inertial_mass.value()},
                    {"eta", c.species.eta},
                    {"hyperfine_hz", c.species.hyperfine_splitting.value()},
                    {"optical_wavelength", c.species.optical_wavelength.value()}};
    if (c.env.model() == GravityModel::uniform) {
        j["environment"] = {{"model", "uniform"}, {"g", c.env.g().value()},
                            {"potential_offset", c.env.gauge_offset().value()}};
    } else {
        j["environment"] = {{"model", "point-mass"}, {"gm", c.env.gm()}, {"r0", c.env.r0().value()}};
    }
    json seq = {{"kappa", c.kappa.value_or(0.0)},
                {"laser_phases", std::vector<double>(c.laser_phases.begin(), c.laser_phases.end())},
                {"pi_pulse_swap", c.pi_pulse_swap}};
    if (c.t) seq["T"] = *c.t;
    j["sequence"] = seq;
    j["initial"] = {{"x0", c.x0}, {"v0", c.v0}};

    json run = {{"n_steps", c.n_steps}, {"seed", c.seed}};
    if (c.scan) run["scan"] = {{"variable", to_string(c.scan->variable)}, {"values", c.scan->values}};
    json fr = {{"samples", c.fringes.samples}};
    if (c.fringes.v1) fr["v1"] = *c.fringes.v1;
    if (c.fringes.v2) fr["v2"] = *c.fringes.v2;
    if (c.fringes.window) fr["window"] = *c.fringes.window;
    run["fringes"] = fr;
    if (c.clock) {
        json pairs = json::array();
        for (const auto& [a, b] : c.clock->pairs) pairs.push_back({a, b});
        json clock = {{"pairs", pairs}, {"duration", c.clock->duration}};
        if (c.clock->nu_hz) clock["nu_hz"] = *c.clock->nu_hz;
        run["clock"] = clock;
    }
    json inv = {{"free_contrast", c.invert.free_contrast}, {"ladder", ladder_json(c.invert.ladder)}};
    if (c.invert.delta_phase) inv["delta_phase"] = *c.invert.delta_phase;
    if (c.invert.g_reference) inv["g_reference"] = *c.invert.g_reference;
    if (!c.invert.scan.empty()) {
        json scan = json::array();
        for (const auto& p : c.invert.scan) scan.push_back({p.laser_phase, p.excited});
        inv["scan"] = scan;
    }
    if (c.invert.monte_carlo) {
        json mc = ladder_json(*c.invert.monte_carlo);
        mc["trials"] = c.invert.monte_carlo->trials;
        mc["sigma"] = c.invert.monte_carlo->sigma;
        inv["monte_carlo"] = mc;
    }
    run["invert"] = inv;
    if (!c.eta_grid.empty()) run["eta_grid"] = c.eta_grid;
    if (c.sensitivity_nu_hz) run["sensitivity"] = {{"optical_nu_hz", *c.sensitivity_nu_hz}};
    if (c.trajectory_dt) run["trajectory_dt"] = *c.trajectory_dt;
    j["run"] = run;
    return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json channels_json(const PhaseChannels& ch) {
    return {{"potential", ch.potential}, {"kinetic", ch.kinetic}, {"laser", ch.laser},
            {"internal", ch.internal}, {"total", ch.total()}};
}

json estimate_json(const GravimeterEstimate& e) {
    return {{"g_hat", e.g_hat},
            {"residual", e.residual},
            {"iterations", e.iterations},
            {"wrapped_phase", e.wrapped_phase},
            {"fringe_index", e.fringe_index},
            {"phase", e.phase},
            {"contrast", e.contrast},
            {"rms_population_residual", e.rms_population_residual}};
}

class Record {
public:
    Record(const std::string& command, const ScenarioConfig& c, const RunOptions& opts) {
        const json echo = echo_json(c);
        j_["command"] = command;
        j_["scenario"] = echo;
        json prov = {{"constants_version", kConstantsVersion},
                     {"artifact_version", kArtifactVersion},
                     {"scenario_hash", fnv1a_hex(echo.dump())}};
        if (opts.timestamp) prov["timestamp"] = *opts.timestamp;
        j_["provenance"] = prov;
    }
    json& operator[](const char* key) { return j_[key]; }
    std::string text() const { return dump(j_); }

private:
    json j_;
};

CommandResult cmd_phase(const ScenarioConfig& c, const RunOptions& opts) {
    const MzScenario mz = c.mz();
    const PhaseBreakdown b = mz.run();
    const PortPopulations pop = port_population(Phase(b.observable()));
    Record rec("phase", c, opts);
    rec["phase"] = {{"arm_a", channels_json(b.arm_a)},
                    {"arm_b", channels_json(b.arm_b)},
                    {"differential", channels_json(b.differential)},
                    {"propagation", b.propagation},
                    {"optical_offset", b.optical_offset},
                    {"observable", b.observable()}};
    rec["populations"] = {{"P_e", pop.excited}, {"P_g", pop.ground}};
    CommandResult out;
    out.files.push_back({"phase.json", rec.text()});
    if (c.trajectory_dt) {
        out.files.push_back({"trajectory.csv", trajectory_csv(mz.arms(), Time(*c.trajectory_dt))});
    }
    out.summary = "differential phase " + format_double(b.observable()) + " rad, P_e " + format_double(pop.excited);
    return out;
}

CommandResult cmd_verify(const ScenarioConfig& c, const RunOptions& opts) {
    const MzScenario mz = c.mz();
    const EquivalenceReport r = verify_equivalence_chain(mz);
    const FringeFallReport fall = fringe_fall_check(mz.species, mz.kappa, mz.env.g(), mz.t);
    json eq;
    for (const auto& [k, v] : r.values) eq[k] = v;
    eq["deviations"] = r.deviations;
    eq["eta"] = r.eta;
    eq["tolerance"] = r.tolerance;
    eq["max_deviation"] = r.max_deviation;
    eq["passed"] = r.passed;
    if (!r.failure.empty()) eq["failure"] = r.failure;
    Record rec("verify", c, opts);
    rec["equivalence"] = eq;
    rec["fringe_fall"] = {{"fall_distance", fall.fall_distance}, {"lambda_db", fall.lambda_db},
                          {"fringe_phase", fall.fringe_phase}, {"closed_form", fall.closed_form},
                          {"deviation", fall.deviation}, {"passed", fall.passed}};
    const bool ok = r.passed && fall.passed;
    rec["passed"] = ok;
    CommandResult out;
    out.exit_code = ok ? 0 : 3;
    out.files.push_back({"verify.json", rec.text()});
    out.summary = std::string(ok ? "PASS" : "FAIL") + ": max relative deviation " + format_double(r.max_deviation) +
                  " (tolerance " + format_double(r.tolerance) + ")";
    return out;
}

CommandResult cmd_fringes(const ScenarioConfig& c, const RunOptions& opts) {
    const double v1 = c.fringes.v1.value_or(0.0);
    double v2 = 0.0;
    if (c.fringes.v2) {
        v2 = *c.fringes.v2;
    } else {
        if (!c.kappa || *c.kappa == 0.0) config_error("missing field run.fringes.v2 (no sequence.kappa to derive it)");
        v2 = v1 + recoil_velocity(c.species, Wavenumber(*c.kappa)).value();
    }
    if (v1 == v2) config_error("run.fringes.v1 and run.fringes.v2 must differ");
    const double expected = 2.0 * std::numbers::pi * kCodata2018.hbar / (c.species.inertial_mass.value() * std::abs(v1 - v2));
    const double window = c.fringes.window.value_or(10.0 * expected);
    const FringePattern pat = spatial_fringes(c.species, Velocity(v1), Velocity(v2), Length(window), c.fringes.samples);
    CsvWriter csv({"x", "intensity"});
    for (std::size_t i = 0; i < pat.x.size(); ++i) {
        csv.field(pat.x[i]).field(pat.intensity[i]);
        csv.end_row();
    }
    const double lambda_c = compton_wavelength(c.species.inertial_mass).value();
    Record rec("fringes", c, opts);
    rec["fringes"] = {{"v1", v1}, {"v2", v2}, {"window", window}, {"samples", pat.x.size()},
                      {"spacing", pat.spacing}, {"expected_spacing", pat.expected_spacing}, {"peaks", pat.peaks},
                      {"compton_wavelength", lambda_c}, {"spacing_over_compton", pat.spacing / lambda_c}};
    CommandResult out;
    out.files.push_back({"fringes.csv", csv.str()});
    out.files.push_back({"fringes.json", rec.text()});
    out.summary = "fringe spacing " + format_double(pat.spacing) + " m (expected " + format_double(pat.expected_spacing) +
                  " m, Compton wavelength " + format_double(lambda_c) + " m)";
    return out;
}

CommandResult cmd_scan(const ScenarioConfig& c, const RunOptions&) {
    if (!c.scan) config_error("missing section run.scan");
    const MzScenario mz = c.mz();
    if (c.scan->variable == ScanVariable::gravity && mz.env.model() != GravityModel::uniform) {
        config_error("run.scan.variable g needs a uniform environment");
    }
    const auto points = fringe_scan(mz, c.scan->variable, c.scan->values);
    CsvWriter csv({"scan_value", "P_e", "P_g"});
    for (const auto& p : points) {
        csv.field(p.value).field(p.populations.excited).field(p.populations.ground);
        csv.end_row();
    }
    CommandResult out;
    out.files.push_back({"scan.csv", csv.str()});
    out.summary = std::to_string(points.size()) + " scan points over " + to_string(c.scan->variable);
    return out;
}

CommandResult cmd_clock_compare(const ScenarioConfig& c, const RunOptions&) {
    if (!c.clock) config_error("missing section run.clock");
    const double nu = c.clock->nu_hz.value_or(c.species.hyperfine_splitting.value());
    if (!(nu > 0.0)) config_error("run.clock.nu_hz must be positive");
    CsvWriter csv({"x1", "x2", "duration", "delta_T", "rate_fraction", "redshift_fraction", "nu_hz",
                   "received_nu_hz", "phase_deficit"});
    double first = 0.0;
    for (std::size_t i = 0; i < c.clock->pairs.size(); ++i) {
        const auto [x1, x2] = c.clock->pairs[i];
        const Time dt = time_dilation(c.env, Length(x1), Length(x2), Time(c.clock->duration));
        const double rate = fractional_redshift(c.env, Length(x1), Length(x2));
        // Photon sent from x2 to x1.
        const double shift = fractional_redshift(c.env, Length(x2), Length(x1));
        const double received = photon_redshift(c.env, Length(x2), Length(x1), FrequencyHz(nu)).value();
        const double deficit = clock_phase_deficit(FrequencyHz(nu), dt).value();
        csv.field(x1).field(x2).field(c.clock->duration).field(dt.value()).field(rate).field(shift).field(nu)
            .field(received).field(deficit);
        csv.end_row();
        if (i == 0) first = dt.value();
    }
    CommandResult out;
    out.files.push_back({"clock_compare.csv", csv.str()});
    out.summary = "first pair delta_T " + format_double(first) + " s";
    return out;
}

CommandResult cmd_invert(const ScenarioConfig& c, const RunOptions& opts) {
    const MzScenario mz = c.mz();
    const double eta = mz.species.eta;
    GravimeterEstimate e;
    std::string method;
    if (c.invert.delta_phase) {
        method = "closed_form";
        e = invert_g(Phase(*c.invert.delta_phase), mz.kappa, mz.t, eta);
    } else if (!c.invert.scan.empty()) {
        method = "fringe_fit";
        FitOptions fo;
        fo.free_contrast = c.invert.free_contrast;
        fo.g_reference = c.invert.g_reference;
        std::vector<FringeSample> scan = c.invert.scan;
        e = fit_fringe_scan(scan, mz.kappa, mz.t, eta, fo);
    } else {
        method = "synthetic_ladder";
        e = noiseless_ladder_estimate(mz, c.invert.ladder);
    }
    Record rec("invert", c, opts);
    rec["method"] = method;
    rec["estimate"] = estimate_json(e);
    CommandResult out;
    if (c.invert.monte_carlo) {
        MonteCarloOptions mc = *c.invert.monte_carlo;
        mc.seed = c.seed;
        const MonteCarloSummary s = monte_carlo_gravimeter(mz, mc);
        CsvWriter csv({"trial", "g_hat", "error"});
        for (const auto& t : s.trials) {
            csv.field(static_cast<std::int64_t>(t.trial)).field(t.g_hat).field(t.error);
            csv.end_row();
        }
        rec["monte_carlo"] = {{"trials", s.trials.size()}, {"sigma", mc.sigma}, {"seed", mc.seed},
                              {"g_true", s.g_true}, {"mean_error", s.mean_error}, {"rms_error", s.rms_error},
                              {"predicted_sigma", s.predicted_sigma}, {"ratio", s.ratio}};
        out.files.push_back({"invert.json", rec.text()});
        out.files.push_back({"invert_mc.csv", csv.str()});
    } else {
        out.files.push_back({"invert.json", rec.text()});
    }
    out.summary = method + ": g_hat " + format_double(e.g_hat) + " m/s^2";
    return out;
}

CommandResult cmd_sweep_eta(const ScenarioConfig& c, const RunOptions& opts) {
    if (c.eta_grid.empty()) config_error("missing field run.eta_grid");
    const MzScenario mz = c.mz();
    const EpSweep sweep = ep_sweep(mz, c.eta_grid);
    CsvWriter csv({"eta", "delta_phase"});
    for (const auto& p : sweep.points) {
        csv.field(p.eta).field(p.phase);
        csv.end_row();
    }
    Record rec("sweep-eta", c, opts);
    json s = {{"expected_slope", sweep.expected_slope}, {"slope_deviation", sweep.slope_deviation},
              {"passed", sweep.passed}};
    if (sweep.slope) s["slope"] = *sweep.slope;
    rec["sweep"] = s;
    CommandResult out;
    out.exit_code = sweep.passed ? 0 : 3;
    out.files.push_back({"sweep_eta.csv", csv.str()});
    out.files.push_back({"sweep_eta.json", rec.text()});
    out.summary = sweep.slope ? "slope " + format_double(*sweep.slope) + " rad per unit eta (expected " +
                                    format_double(sweep.expected_slope) + ")"
                              : std::string("fewer than two distinct eta values; no slope");
    return out;
}

CommandResult cmd_sensitivity(const ScenarioConfig& c, const RunOptions& opts) {
    const double nu = c.sensitivity_nu_hz.value_or(c.species.optical_frequency().value());
    const SensitivityReport r = sensitivity_ratio(c.species, FrequencyHz(nu));
    Record rec("sensitivity", c, opts);
    rec["sensitivity"] = {{"optical_nu_hz", nu}, {"matter_coupling", r.matter_coupling},
                          {"optical_coupling", r.optical_coupling}, {"ratio", r.ratio}};
    CommandResult out;
    out.files.push_back({"sensitivity.json", rec.text()});
    out.summary = "matter/optical coupling ratio " + format_double(r.ratio);
    return out;
}

} // namespace

MzScenario ScenarioConfig::mz() const {
    if (!t) config_error("missing field sequence.T");
    if (!kappa) config_error("missing field sequence.kappa");
    if (env.model() != GravityModel::uniform) {
        config_error("environment.model must be 'uniform' for interferometer commands");
    }
    MzScenario s;
    s.species = species;
    s.env = env;
    s.kappa = Wavenumber(*kappa);
    s.t = Time(*t);
    s.optical_phases = {Phase(laser_phases[0]), Phase(laser_phases[1]), Phase(laser_phases[2])};
    s.x0 = Length(x0);
    s.v0 = Velocity(v0);
    s.n_steps = n_steps;
    s.arm_options.pi_pulse_swaps_internal_state = pi_pulse_swap;
    return s;
}

ScenarioConfig parse_scenario(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        config_error(std::string("config is not valid JSON: ") + e.what());
    }
    try {
        return parse_json(doc);
    } catch (const json::exception& e) {
        config_error(std::string("config error: ") + e.what());
    }
}

ScenarioConfig load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(Errc::io, "cannot read config file '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

std::string echo_scenario(const ScenarioConfig& config) { return dump(echo_json(config)); }

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names{"phase", "verify", "fringes", "scan", "clock-compare",
                                                "invert", "sweep-eta", "sensitivity"};
    return names;
}

CommandResult run_command(const std::string& command, const ScenarioConfig& config, const RunOptions& options) {
    if (command == "phase") return cmd_phase(config, options);
    if (command == "verify") return cmd_verify(config, options);
    if (command == "fringes") return cmd_fringes(config, options);
    if (command == "scan") return cmd_scan(config, options);
    if (command == "clock-compare") return cmd_clock_compare(config, options);
    if (command == "invert") return cmd_invert(config, options);
    if (command == "sweep-eta") return cmd_sweep_eta(config, options);
    if (command == "sensitivity") return cmd_sensitivity(config, options);
    config_error("unknown command '" + command + "'");
}

int exit_code_for(Errc code) noexcept {
    switch (code) {
    case Errc::config:
    case Errc::invalid_quantity:
    case Errc::io:
        return 2;
    default:
        return 3;
    }
}

} // namespace gravphase::app
