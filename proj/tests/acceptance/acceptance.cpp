// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any fails.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include <unistd.h>

#include <CLI11.hpp>

#include "gravphase/app.hpp"
#include "gravphase/clocks.hpp"
#include "gravphase/gravimeter.hpp"
#include "gravphase/interferometer.hpp"
#include "gravphase/io.hpp"

using namespace gravphase;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(double v) { return format_double(v); }

MzScenario cesium() {
    MzScenario s;
    s.species = cesium133();
    s.env = GravityEnvironment::uniform(GravAccel(9.8));
    s.kappa = Wavenumber(1.4748e7);
    s.t = Time(0.1);
    return s;
}

double kappa_g_t2() { return 1.4748e7 * 9.8 * 0.1 * 0.1; }

Outcome equivalence_chain() {
    const auto start = std::chrono::steady_clock::now();
    const EquivalenceReport r = verify_equivalence_chain(cesium());
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool ok = r.passed && r.max_deviation <= 1e-9 && secs < 1.0;
    return {ok, "max pairwise deviation " + fmt(r.max_deviation) + " over " + std::to_string(r.values.size()) +
                    " forms, " + fmt(secs) + " s" + (r.failure.empty() ? "" : ", first failure " + r.failure)};
}

Outcome ep_dependence() {
    std::vector<double> grid;
    for (int i = 0; i <= 20; ++i) grid.push_back(0.9 + 0.01 * i);
    const EpSweep sweep = ep_sweep(cesium(), grid);
    MzScenario zero = cesium();
    zero.species.eta = 0.0;
    const double at_zero = zero.run().differential.potential;
    const bool ok = sweep.slope && sweep.slope_deviation <= 1e-9 && std::abs(at_zero) <= 1e-12;
    return {ok, "slope " + (sweep.slope ? fmt(*sweep.slope) : std::string("n/a")) + " vs " +
                    fmt(sweep.expected_slope) + " (rel " + fmt(sweep.slope_deviation) + "), eta=0 phase " +
                    fmt(at_zero)};
}

Outcome propagation_gauge() {
    bool ok = true;
    double worst_prop = 0.0, worst_laser = 0.0, worst_pot = 0.0;
    for (double eta : {0.9, 1.0, 1.1}) {
        MzScenario s = cesium();
        s.species.eta = eta;
        const PhaseBreakdown b = s.run();
        const double expected = -eta * kappa_g_t2();
        worst_prop = std::max(worst_prop, std::abs(b.propagation));
        worst_laser = std::max(worst_laser, relative_deviation(b.differential.laser, expected));
        worst_pot = std::max(worst_pot, relative_deviation(b.differential.potential, expected));
    }
    ok = worst_prop <= 1e-9 && worst_laser <= 1e-9 && worst_pot <= 1e-9;
    return {ok, "|propagation| " + fmt(worst_prop) + " rad, laser rel " + fmt(worst_laser) + ", potential rel " +
                    fmt(worst_pot)};
}

Outcome internal_cancellation() {
    const MzScenario swapped = cesium();
    MzScenario unswapped = cesium();
    unswapped.arm_options.pi_pulse_swaps_internal_state = false;
    const double with_swap = swapped.run().differential.internal;
    const double without = unswapped.run().differential.internal;
    const AtomSpecies cs = cesium133();
    const double ratio = cs.hyperfine_energy().value() / kCodata2018.c2() / cs.inertial_mass.value();
    const bool a = std::abs(with_swap) <= 1e-12;
    const bool b = std::abs(without) > 1e3 * 1e-12;
    const bool c = ratio >= 1e-16 && ratio <= 1e-14;
    return {a && b && c, "swap on " + fmt(with_swap) + " rad (bound 1e-12)" + (a ? "" : " EXCEEDED") +
                             ", swap off " + fmt(without) + " rad, (E_i/c^2)/m_i " + fmt(ratio)};
}

Outcome fringe_discriminator() {
    const AtomSpecies cs = cesium133();
    const double vr = recoil_velocity(cs, Wavenumber(1.4748e7)).value();
    const double expected = 2.0 * std::numbers::pi / 1.4748e7;
    const FringePattern p = spatial_fringes(cs, Velocity(0.0), Velocity(vr), Length(10.0 * expected), 4001);
    const double lc = compton_wavelength(cs.inertial_mass).value();
    const double dev = relative_deviation(p.spacing, expected);
    const double factor = p.spacing / lc;
    const bool orders = p.spacing >= 1e-8 && p.spacing <= 1e-6 && lc >= 1e-18 && lc <= 1e-16;
    return {dev <= 1e-3 && factor > 1e9 && orders,
            "spacing " + fmt(p.spacing) + " m (rel " + fmt(dev) + "), lambda_c " + fmt(lc) + " m, ratio " + fmt(factor)};
}

Outcome clock_dilation() {
    const auto env = GravityEnvironment::uniform(GravAccel(9.81));
    const double dt = time_dilation(env, Length(1.0), Length(0.0), Time(1.0)).value();
    const double dev = relative_deviation(dt, 9.81 / kCodata2018.c2());
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> pos(-1e3, 1e3);
    int bad = 0;
    for (int i = 0; i < 1000; ++i) {
        const Length x1(pos(rng)), x2(pos(rng)), x3(pos(rng));
        const double a = time_dilation(env, x1, x2, Time(1.0)).value();
        const double back = time_dilation(env, x2, x1, Time(1.0)).value();
        const double whole = time_dilation(env, x1, x3, Time(1.0)).value();
        const double chained = a + time_dilation(env, x2, x3, Time(1.0)).value();
        if (a != -back || relative_deviation(whole, chained) > 1e-12) ++bad;
    }
    return {dev <= 1e-12 && bad == 0,
            "delta_T " + fmt(dt) + " s (rel " + fmt(dev) + "), invariant failures " + std::to_string(bad) + "/1000"};
}

Outcome sensitivity_factor() {
    const AtomSpecies cs = cesium133();
    const double nu = kCodata2018.c / 852e-9;
    const double ratio = sensitivity_ratio(cs, FrequencyHz(nu)).ratio;
    return {ratio >= 1e9 && ratio <= 1e11, "ratio " + fmt(ratio)};
}

Outcome gravimeter_round_trip() {
    const MzScenario s = cesium();
    std::vector<FringeSample> scan;
    const double delta = s.run().observable();
    for (int i = 0; i < 32; ++i) {
        const double phi = 2.0 * std::numbers::pi * i / 32.0;
        scan.push_back({phi, port_population(Phase(delta + phi)).excited});
    }
    FitOptions fo;
    fo.g_reference = 9.80001;  // within half a fringe: |dg| kappa T^2 < pi
    const double fit_dev = relative_deviation(fit_fringe_scan(scan, s.kappa, s.t, 1.0, fo).g_hat, 9.8);
    const double ladder_dev = relative_deviation(noiseless_ladder_estimate(s, MonteCarloOptions{}).g_hat, 9.8);
    MonteCarloOptions mc;
    mc.trials = 100;
    mc.sigma = 1e-3;
    mc.seed = 1;
    const MonteCarloSummary sum = monte_carlo_gravimeter(s, mc);
    const bool ok = fit_dev <= 1e-9 && ladder_dev <= 1e-9 && sum.ratio >= 0.5 && sum.ratio <= 2.0;
    return {ok, "noiseless fit rel " + fmt(fit_dev) + ", ladder rel " + fmt(ladder_dev) + ", MC rms/predicted " +
                    fmt(sum.ratio) + " (mean error " + fmt(sum.mean_error) + ", predicted sigma " +
                    fmt(sum.predicted_sigma) + ")"};
}

Outcome launch_independence() {
    const double ref = cesium().run().differential.potential;
    double worst = 0.0;
    for (double x0 : {0.0, 1.0}) {
        for (double v0 : {0.0, 0.1, -0.1}) {
            MzScenario s = cesium();
            s.x0 = Length(x0);
            s.v0 = Velocity(v0);
            worst = std::max(worst, std::abs(s.run().differential.potential - ref));
        }
    }
    return {worst <= 1e-9, "max |change| " + fmt(worst) + " rad"};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome determinism(const std::string& cli, const std::string& config) {
    if (cli.empty() || config.empty()) {
        const app::ScenarioConfig c = app::parse_scenario(R"({"environment": {"g": 9.8},
            "sequence": {"kappa": 1.4748e7, "T": 0.1}})");
        const bool same = app::run_command("verify", c).files[0].content == app::run_command("verify", c).files[0].content;
        return {same, "in-process verify outputs " + std::string(same ? "identical" : "differ")};
    }
    const auto base = std::filesystem::temp_directory_path() / ("gravphase_accept_" + std::to_string(::getpid()));
    std::string outputs[2];
    for (int i = 0; i < 2; ++i) {
        const auto dir = base / std::to_string(i);
        const std::string cmd = "\"" + cli + "\" verify --config \"" + config + "\" --out \"" + dir.string() + "\" -q";
        if (std::system(cmd.c_str()) != 0) {
            return {false, "cli run failed: " + cmd};
        }
        outputs[i] = slurp(dir / "verify.json");
    }
    std::filesystem::remove_all(base);
    const bool same = !outputs[0].empty() && outputs[0] == outputs[1];
    return {same, "two CLI verify runs: " + std::to_string(outputs[0].size()) + " bytes, " +
                      (same ? "byte-identical" : "differ")};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App cli{"acceptance gate"};
    std::string exe;
    std::string config;
    cli.add_option("--cli", exe, "gravphase executable for the determinism check");
    cli.add_option("--config", config, "scenario used for the determinism check");
    CLI11_PARSE(cli, argc, argv);

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"equivalence chain", equivalence_chain},
        {"EP dependence", ep_dependence},
        {"propagation-gauge consistency", propagation_gauge},
        {"internal-state pi-pulse cancellation", internal_cancellation},
        {"fringe discriminator", fringe_discriminator},
        {"clock dilation", clock_dilation},
        {"sensitivity factor", sensitivity_factor},
        {"gravimeter round-trip", gravimeter_round_trip},
        {"launch-state independence", launch_independence},
        {"determinism", [&] { return determinism(exe, config); }},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += o.pass ? 0 : 1;
        std::cout << (o.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << ": " << o.detail
                  << "\n";
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}
