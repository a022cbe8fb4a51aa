#include "gravphase/gravimeter.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace gravphase {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double scale_factor(Wavenumber kappa, Time t, double eta) {
    const double s = eta * kappa.value() * t.value() * t.value();
    if (s == 0.0 || !std::isfinite(s)) {
        throw Error(Errc::unidentifiable, "g is unidentifiable when eta kappa T^2 == 0");
    }
    return s;
}

} // namespace

double wrap_phase(double phase) noexcept {
    double w = std::remainder(phase, kTwoPi);  // [-pi, pi]
    if (w <= -std::numbers::pi) {
        w += kTwoPi;
    }
    return w;
}

GravimeterEstimate invert_g(Phase delta_phase, Wavenumber kappa, Time t, double eta) {
    const double s = scale_factor(kappa, t, eta);
    GravimeterEstimate e;
    e.phase = delta_phase.value();
    e.wrapped_phase = wrap_phase(e.phase);
    e.fringe_index = static_cast<std::int64_t>(std::llround((e.phase - e.wrapped_phase) / kTwoPi));
    e.g_hat = -e.phase / s;
    return e;
}

GravimeterEstimate fit_fringe_scan(const std::vector<FringeSample>& scan, Wavenumber kappa, Time t, double eta,
                                   const FitOptions& options) {
    const double s = scale_factor(kappa, t, eta);
    if (scan.size() < 5) {
        throw Error(Errc::config, "fringe fit needs at least 5 scan points");
    }
    const auto [lo, hi] = std::minmax_element(scan.begin(), scan.end(), [](const auto& a, const auto& b) {
        return a.laser_phase < b.laser_phase;
    });
    if (hi->laser_phase - lo->laser_phase < std::numbers::pi) {
        throw Error(Errc::config, "fringe scan must span at least half a fringe (pi rad)");
    }
    const auto [pmin, pmax] = std::minmax_element(scan.begin(), scan.end(), [](const auto& a, const auto& b) {
        return a.excited < b.excited;
    });
    if (pmax->excited - pmin->excited <= 1e-12) {
        throw Error(Errc::unidentifiable, "degenerate fringe scan: all populations equal");
    }

    // Linear start: 1 - 2 P = a cos(phi) - b sin(phi) with a = C cos(dPhi), b = C sin(dPhi).
    double scc = 0.0, sss = 0.0, scs = 0.0, syc = 0.0, sys = 0.0;
    for (const auto& p : scan) {
        const double c = std::cos(p.laser_phase);
        const double sn = std::sin(p.laser_phase);
        const double y = 1.0 - 2.0 * p.excited;
        scc += c * c;
        sss += sn * sn;
        scs += c * sn;
        syc += y * c;
        sys += y * sn;
    }
    const double det = scc * sss - scs * scs;
    if (std::abs(det) <= 1e-12 * std::max(1.0, scc * sss)) {
        throw Error(Errc::unidentifiable, "degenerate fringe scan: laser phases do not resolve the fringe");
    }
    const double a = (syc * sss - sys * scs) / det;
    const double b = -(sys * scc - syc * scs) / det;
    double phase = std::atan2(b, a);
    double contrast = options.free_contrast ? std::hypot(a, b) : 1.0;

    GravimeterEstimate e;
    bool converged = false;
    double last_step = 0.0;
    for (int it = 1; it <= options.max_iterations; ++it) {
        // model m = (1 - C cos(phase + phi)) / 2; dm/dphase = C sin / 2, dm/dC = -cos / 2
        double jpp = 0.0, jpc = 0.0, jcc = 0.0, rp = 0.0, rc = 0.0;
        for (const auto& p : scan) {
            const double arg = phase + p.laser_phase;
            const double c = std::cos(arg);
            const double sn = std::sin(arg);
            const double r = p.excited - 0.5 * (1.0 - contrast * c);
            const double dp = 0.5 * contrast * sn;
            const double dc = -0.5 * c;
            jpp += dp * dp;
            rp += dp * r;
            if (options.free_contrast) {
                jpc += dp * dc;
                jcc += dc * dc;
                rc += dc * r;
            }
        }
        double step_p = 0.0;
        double step_c = 0.0;
        if (options.free_contrast) {
            const double d = jpp * jcc - jpc * jpc;
            if (d == 0.0) {
                throw Error(Errc::unidentifiable, "singular Gauss-Newton system");
            }
            step_p = (rp * jcc - rc * jpc) / d;
            step_c = (rc * jpp - rp * jpc) / d;
        } else {
            if (jpp == 0.0) {
                throw Error(Errc::unidentifiable, "singular Gauss-Newton system");
            }
            step_p = rp / jpp;
        }
        phase += step_p;
        contrast += step_c;
        e.iterations = it;
        last_step = std::abs(step_p);
        if (last_step < options.step_tolerance) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        throw Error(Errc::fit_failure, "fringe fit did not converge in " + std::to_string(options.max_iterations) +
                                           " iterations (last phase step " + std::to_string(last_step) +
                                           " rad, phase " + std::to_string(phase) + " rad)");
    }

    e.wrapped_phase = wrap_phase(phase);
    e.contrast = contrast;
    e.residual = last_step;
    if (options.g_reference) {
        const double predicted = -s * *options.g_reference;
        e.fringe_index = static_cast<std::int64_t>(std::llround((predicted - e.wrapped_phase) / kTwoPi));
    }
    e.phase = e.wrapped_phase + kTwoPi * static_cast<double>(e.fringe_index);
    e.g_hat = -e.phase / s;

    double ss = 0.0;
    for (const auto& p : scan) {
        const double r = p.excited - 0.5 * (1.0 - contrast * std::cos(e.wrapped_phase + p.laser_phase));
        ss += r * r;
    }
    e.rms_population_residual = std::sqrt(ss / static_cast<double>(scan.size()));
    return e;
}

GravimeterEstimate resolve_fringe_index_ladder(std::vector<LadderRung> rungs, Wavenumber kappa, double eta) {
    if (rungs.empty()) {
        throw Error(Errc::config, "fringe ladder needs at least one rung");
    }
    std::sort(rungs.begin(), rungs.end(), [](const auto& a, const auto& b) { return a.t < b.t; });
    GravimeterEstimate e = invert_g(Phase(rungs.front().wrapped_phase), kappa, rungs.front().t, eta);
    for (std::size_t i = 1; i < rungs.size(); ++i) {
        const double s = scale_factor(kappa, rungs[i].t, eta);
        const double predicted = -s * e.g_hat;
        const double wrapped = wrap_phase(rungs[i].wrapped_phase);
        const auto n = static_cast<std::int64_t>(std::llround((predicted - wrapped) / kTwoPi));
        const double phase = wrapped + kTwoPi * static_cast<double>(n);
        e.g_hat = -phase / s;
        e.phase = phase;
        e.wrapped_phase = wrapped;
        e.fringe_index = n;
    }
    return e;
}

double linearized_g_sigma(double delta_phase, const std::vector<double>& laser_phases, double sigma,
                          Wavenumber kappa, Time t, double eta) {
    double info = 0.0;
    for (double phi : laser_phases) {
        const double sn = std::sin(delta_phase + phi);
        info += 0.25 * sn * sn;
    }
    if (info == 0.0) {
        throw Error(Errc::unidentifiable, "scan carries no phase information");
    }
    return sigma / std::sqrt(info) / std::abs(scale_factor(kappa, t, eta));
}

namespace {

std::vector<double> laser_grid(std::size_t points) {
    if (points < 5) {
        throw Error(Errc::config, "monte-carlo scans need at least 5 points");
    }
    std::vector<double> grid(points);
    for (std::size_t i = 0; i < points; ++i) {
        grid[i] = kTwoPi * static_cast<double>(i) / static_cast<double>(points);
    }
    return grid;
}

struct RungScan {
    Time t;
    std::vector<FringeSample> clean;
    double fixed_offset = 0.0;  // phi_1 - 2 phi_2 of the unscanned pulses
};

std::vector<RungScan> ladder_scans(const MzScenario& scenario, const MonteCarloOptions& options,
                                   const PhysicalConstants& k) {
    if (options.ladder_fractions.empty()) {
        throw Error(Errc::config, "ladder needs at least one T fraction");
    }
    const std::vector<double> grid = laser_grid(options.points);
    std::vector<RungScan> out;
    for (double frac : options.ladder_fractions) {
        if (!(frac > 0.0)) {
            throw Error(Errc::config, "ladder T fractions must be positive");
        }
        MzScenario rung = scenario;
        rung.t = Time(scenario.t.value() * frac);
        RungScan scan{rung.t, {},
                      scenario.optical_phases[0].value() - 2.0 * scenario.optical_phases[1].value()};
        for (const auto& p : fringe_scan(rung, ScanVariable::laser_phase, grid, k)) {
            scan.clean.push_back({p.value, p.populations.excited});
        }
        out.push_back(std::move(scan));
    }
    return out;
}

GravimeterEstimate fit_ladder(const std::vector<RungScan>& rungs, const std::vector<std::vector<FringeSample>>& data,
                              Wavenumber kappa, double eta) {
    std::vector<LadderRung> fitted;
    GravimeterEstimate last;
    for (std::size_t i = 0; i < rungs.size(); ++i) {
        last = fit_fringe_scan(data[i], kappa, rungs[i].t, eta);
        fitted.push_back({rungs[i].t, last.wrapped_phase - rungs[i].fixed_offset});
    }
    GravimeterEstimate e = resolve_fringe_index_ladder(fitted, kappa, eta);
    e.iterations = last.iterations;
    e.residual = last.residual;
    e.contrast = last.contrast;
    e.rms_population_residual = last.rms_population_residual;
    return e;
}

} // namespace

GravimeterEstimate noiseless_ladder_estimate(const MzScenario& scenario, const MonteCarloOptions& options,
                                             const PhysicalConstants& k) {
    const auto rungs = ladder_scans(scenario, options, k);
    std::vector<std::vector<FringeSample>> data;
    for (const auto& r : rungs) {
        data.push_back(r.clean);
    }
    return fit_ladder(rungs, data, scenario.kappa, scenario.species.eta);
}

MonteCarloSummary monte_carlo_gravimeter(const MzScenario& scenario, const MonteCarloOptions& options,
                                         const PhysicalConstants& k) {
    if (options.trials == 0) {
        throw Error(Errc::config, "monte-carlo needs at least one trial");
    }
    if (!(options.sigma >= 0.0)) {
        throw Error(Errc::config, "monte-carlo sigma must be non-negative");
    }
    const auto rungs = ladder_scans(scenario, options, k);
    const double eta = scenario.species.eta;

    MonteCarloSummary out;
    out.g_true = scenario.env.g().value();
    {
        const RungScan& final_rung = rungs.back();
        MzScenario s = scenario;
        s.t = final_rung.t;
        std::vector<double> phis;
        for (const auto& p : final_rung.clean) {
            phis.push_back(p.laser_phase);
        }
        out.predicted_sigma = linearized_g_sigma(s.run(k).observable() - s.optical_phases[2].value(), phis, options.sigma,
                                                 scenario.kappa, final_rung.t, eta);
    }

    double sum = 0.0;
    double sum2 = 0.0;
    for (std::size_t trial = 0; trial < options.trials; ++trial) {
        // Independent stream per trial: results do not depend on evaluation order.
        std::seed_seq seq{static_cast<std::uint32_t>(options.seed), static_cast<std::uint32_t>(options.seed >> 32),
                          static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
        std::mt19937_64 rng(seq);
        std::normal_distribution<double> noise(0.0, options.sigma);

        std::vector<std::vector<FringeSample>> data;
        for (const auto& r : rungs) {
            std::vector<FringeSample> noisy = r.clean;
            for (auto& p : noisy) {
                p.excited += noise(rng);
            }
            data.push_back(std::move(noisy));
        }
        const GravimeterEstimate e = fit_ladder(rungs, data, scenario.kappa, eta);
        const double err = e.g_hat - out.g_true;
        out.trials.push_back({trial, e.g_hat, err});
        sum += err;
        sum2 += err * err;
    }
    const auto n = static_cast<double>(options.trials);
    out.mean_error = sum / n;
    out.rms_error = std::sqrt(sum2 / n);
    out.ratio = out.predicted_sigma > 0.0 ? out.rms_error / out.predicted_sigma : 0.0;
    return out;
}

SensitivityReport sensitivity_ratio(const AtomSpecies& species, FrequencyHz optical_nu, const PhysicalConstants& k) {
    if (!(optical_nu.value() > 0.0)) {
        throw Error(Errc::domain, "optical frequency must be positive");
    }
    SensitivityReport r;
    r.matter_coupling = species.inertial_mass.value();
    r.optical_coupling = photon_mass_equivalent(optical_nu, k).value();
    r.ratio = species.inertial_mass.value() * k.c2() / (k.h * optical_nu.value());
    return r;
}

EpSweep ep_sweep(const MzScenario& scenario, const std::vector<double>& eta_grid, double tolerance,
                 const PhysicalConstants& k) {
    EpSweep out;
    out.expected_slope = closed_form_mz_phase(scenario.kappa, scenario.env.g(), scenario.t, 1.0).value();
    for (double eta : eta_grid) {
        MzScenario s = scenario;
        s.species.eta = eta;
        out.points.push_back({eta, s.run(k).differential.potential});
    }
    const auto n = static_cast<double>(out.points.size());
    double mean_x = 0.0, mean_y = 0.0;
    for (const auto& p : out.points) {
        mean_x += p.eta;
        mean_y += p.phase;
    }
    if (out.points.empty()) {
        return out;
    }
    mean_x /= n;
    mean_y /= n;
    double sxx = 0.0, sxy = 0.0;
    for (const auto& p : out.points) {
        sxx += (p.eta - mean_x) * (p.eta - mean_x);
        sxy += (p.eta - mean_x) * (p.phase - mean_y);
    }
    if (sxx > 0.0) {
        out.slope = sxy / sxx;
        out.slope_deviation = relative_deviation(*out.slope, out.expected_slope);
        out.passed = out.slope_deviation <= tolerance;
    }
    return out;
}

} // namespace gravphase
