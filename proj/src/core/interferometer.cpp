#include "gravphase/interferometer.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "gravphase/io.hpp"

namespace gravphase {

PortPopulations port_population(Phase delta_phase) {
    const double pe = 0.5 * (1.0 - std::cos(delta_phase.value()));
    return {pe, 1.0 - pe};
}

ScanVariable parse_scan_variable(const std::string& name) {
    if (name == "T") {
        return ScanVariable::pulse_separation;
    }
    if (name == "g") {
        return ScanVariable::gravity;
    }
    if (name == "phi_L") {
        return ScanVariable::laser_phase;
    }
    throw Error(Errc::config, "run.scan.variable must be one of T, g, phi_L (got '" + name + "')");
}

const char* to_string(ScanVariable v) noexcept {
    switch (v) {
    case ScanVariable::pulse_separation: return "T";
    case ScanVariable::gravity: return "g";
    case ScanVariable::laser_phase: return "phi_L";
    }
    return "?";
}

std::vector<ScanPoint> fringe_scan(const MzScenario& scenario, ScanVariable variable,
                                   const std::vector<double>& grid, const PhysicalConstants& k) {
    if (grid.empty()) {
        throw Error(Errc::config, "scan grid is empty");
    }
    const bool increasing = std::is_sorted(grid.begin(), grid.end());
    const bool decreasing = std::is_sorted(grid.rbegin(), grid.rend());
    if (!increasing && !decreasing) {
        throw Error(Errc::config, "scan grid must be monotone");
    }
    std::vector<ScanPoint> out;
    out.reserve(grid.size());
    for (double value : grid) {
        MzScenario point = scenario;
        switch (variable) {
        case ScanVariable::pulse_separation: point.t = Time(value); break;
        case ScanVariable::gravity:
            point.env = GravityEnvironment::uniform(GravAccel(value), scenario.env.gauge_offset());
            break;
        case ScanVariable::laser_phase: point.optical_phases[2] = Phase(value); break;
        }
        const double phase = point.run(k).observable();
        out.push_back({value, phase, port_population(Phase(phase))});
    }
    return out;
}

FringePattern spatial_fringes(const AtomSpecies& species, Velocity v1, Velocity v2, Length window,
                              std::size_t samples, const PhysicalConstants& k) {
    if (v1 == v2) {
        throw Error(Errc::domain, "spatial fringes need two distinct velocities");
    }
    if (!(window.value() > 0.0) || samples < 2) {
        throw Error(Errc::config, "spatial fringes need a positive window and at least 2 samples");
    }
    const double m = species.inertial_mass.value();
    const double k1 = m * v1.value() / k.hbar;
    const double k2 = m * v2.value() / k.hbar;
    FringePattern pat;
    pat.expected_spacing = 2.0 * std::numbers::pi * k.hbar / (m * std::abs(v1.value() - v2.value()));

    const double w = window.value();
    const double denom = static_cast<double>(samples - 1);
    if (denom * pat.expected_spacing / w < kMinSamplesPerFringe) {
        throw Error(Errc::resolution, "fewer than 16 samples per fringe");
    }
    if (w < 2.0 * pat.expected_spacing) {
        throw Error(Errc::resolution, "window shorter than two fringes");
    }

    pat.x.resize(samples);
    pat.intensity.resize(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        // Symmetric grid: x[n-1-i] == -x[i] exactly.
        const double x = w * (2.0 * static_cast<double>(i) - denom) / (2.0 * denom);
        const std::complex<double> psi = std::polar(1.0, k1 * x) + std::polar(1.0, k2 * x);
        pat.x[i] = x;
        pat.intensity[i] = 0.5 * std::norm(psi);
    }

    // Interior maxima, refined by a parabola through the three neighbouring samples.
    std::vector<double> peaks;
    const double h = w / denom;
    for (std::size_t i = 1; i + 1 < samples; ++i) {
        const double l = pat.intensity[i - 1];
        const double c = pat.intensity[i];
        const double r = pat.intensity[i + 1];
        if (c > l && c >= r) {
            const double curv = l - 2.0 * c + r;
            const double offset = curv != 0.0 ? 0.5 * (l - r) / curv : 0.0;
            peaks.push_back(pat.x[i] + offset * h);
        }
    }
    pat.peaks = peaks.size();
    if (peaks.size() < 2) {
        throw Error(Errc::resolution, "fewer than two fringe maxima inside the window");
    }
    pat.spacing = (peaks.back() - peaks.front()) / static_cast<double>(peaks.size() - 1);
    return pat;
}

FringeFallReport fringe_fall_check(const AtomSpecies& species, Wavenumber kappa, GravAccel g, Time t,
                                   const PhysicalConstants& k) {
    FringeFallReport r;
    const double tt = t.value() * t.value();
    r.fall_distance = 2.0 * g.value() * tt;
    r.lambda_db = de_broglie_wavelength(species.inertial_mass, recoil_velocity(species, kappa, k), k).value();
    r.fringe_phase = 2.0 * std::numbers::pi * r.fall_distance / (2.0 * r.lambda_db);
    r.closed_form = kappa.value() * g.value() * tt;
    r.deviation = relative_deviation(r.fringe_phase, r.closed_form);
    r.passed = r.deviation <= 1e-12;
    return r;
}

std::string trajectory_csv(const MachZehnderArms& arms, Time dt) {
    if (!(dt.value() > 0.0)) {
        throw Error(Errc::config, "trajectory sampling step must be positive");
    }
    CsvWriter csv({"t", "x_A", "x_B", "state_A", "state_B"});
    const double t0 = arms.a.t_begin();
    const double t1 = arms.a.t_end();
    const auto count = static_cast<std::size_t>(std::floor((t1 - t0) / dt.value() + 1e-9));
    for (std::size_t i = 0; i <= count + 1; ++i) {
        double t = t0 + static_cast<double>(i) * dt.value();
        if (i == count + 1) {
            if (t1 - (t - dt.value()) <= 1e-12 * std::max(1.0, t1)) {
                break;  // endpoint already sampled
            }
            t = t1;
        }
        t = std::min(t, t1);
        const Time tt(t);
        csv.field(t)
            .field(arms.a.position(tt).value())
            .field(arms.b.position(tt).value())
            .field(std::string(1, state_label(arms.a.state(tt))))
            .field(std::string(1, state_label(arms.b.state(tt))));
        csv.end_row();
    }
    return csv.str();
}

} // namespace gravphase
