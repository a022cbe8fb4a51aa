#include "gravphase/phase.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "gravphase/quadrature.hpp"

namespace gravphase {

namespace {

void require_uniform(const GravityEnvironment& env) {
    if (env.model() != GravityModel::uniform) {
        throw Error(Errc::unsupported_sequence, "phase integration needs a uniform environment");
    }
}

std::vector<double> breakpoints(const ArmTrajectory& arm) {
    std::vector<double> out;
    out.reserve(arm.segments().size() + 1);
    for (const auto& s : arm.segments()) {
        out.push_back(s.t_start);
    }
    out.push_back(arm.t_end());
    return out;
}

std::vector<double> merged_breakpoints(const ArmTrajectory& a, const ArmTrajectory& b) {
    if (a.t_begin() != b.t_begin() || a.t_end() != b.t_end()) {
        throw Error(Errc::unsupported_sequence, "arms must span the same time interval");
    }
    std::vector<double> out = breakpoints(a);
    const std::vector<double> other = breakpoints(b);
    out.insert(out.end(), other.begin(), other.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Segment index of `arm` covering each piece between consecutive breakpoints.
std::vector<std::size_t> piece_segments(const ArmTrajectory& arm, const std::vector<double>& breaks) {
    std::vector<std::size_t> out;
    const auto& segs = arm.segments();
    std::size_t j = 0;
    for (std::size_t piece = 0; piece + 1 < breaks.size(); ++piece) {
        const double mid = 0.5 * (breaks[piece] + breaks[piece + 1]);
        while (j + 1 < segs.size() && mid >= segs[j].t_end) {
            ++j;
        }
        out.push_back(j);
    }
    return out;
}

double optical_phase(const PulseSequence& seq, const ArmKick& kick) {
    if (kick.pulse_index >= seq.pulses().size()) {
        throw Error(Errc::unsupported_sequence, "arm kick refers to a missing pulse");
    }
    return seq.pulses()[kick.pulse_index].optical_phase.value();
}

struct LaserSums {
    double position_sum = 0.0;  // sum of direction * x(t_p)
    double optical_sum = 0.0;   // sum of direction * phi_L
};

LaserSums laser_sums(const ArmTrajectory& arm, const PulseSequence& seq) {
    CompensatedSum xs;
    CompensatedSum phis;
    for (const auto& kick : arm.kicks()) {
        xs.add(kick.direction * arm.position(Time(kick.time)).value());
        phis.add(kick.direction * optical_phase(seq, kick));
    }
    return {xs.value(), phis.value()};
}

} // namespace

PhaseChannels integrate_arm_phase(const ArmTrajectory& arm, const AtomSpecies& species,
                                  const GravityEnvironment& env, const PulseSequence& seq,
                                  const InternalEnergies& internal, std::size_t n_steps,
                                  const PhysicalConstants& k) {
    require_uniform(env);
    const std::vector<double> breaks = breakpoints(arm);
    const auto& segs = arm.segments();
    const double accel = arm.acceleration();
    const double m_i = species.inertial_mass.value();
    const double m_g = species.gravitational_mass().value();

    const auto x_at = [&](double t, std::size_t piece) { return segs[piece].position(t, accel); };
    const auto v_at = [&](double t, std::size_t piece) { return segs[piece].velocity(t, accel); };
    const auto phi_at = [&](double t, std::size_t piece) {
        return potential_at(env, Length(x_at(t, piece))).value();
    };
    const auto energy = [&](std::size_t piece) { return internal.of(segs[piece].state).value(); };

    PhaseChannels out;
    out.potential = -(m_g / k.hbar) * piecewise_simpson(phi_at, breaks, n_steps);
    out.kinetic = (0.5 * m_i / k.hbar) *
                  piecewise_simpson([&](double t, std::size_t p) { const double v = v_at(t, p); return v * v; },
                                    breaks, n_steps);
    const double rest = piecewise_simpson([&](double, std::size_t p) { return energy(p); }, breaks, n_steps);
    const double redshift = piecewise_simpson(
        [&](double t, std::size_t p) { return energy(p) * phi_at(t, p); }, breaks, n_steps);
    out.internal = -(rest / k.hbar) - redshift / (k.hbar * k.c2());

    const LaserSums laser = laser_sums(arm, seq);
    out.laser = seq.kappa().value() * laser.position_sum + laser.optical_sum;
    return out;
}

PhaseBreakdown integrate_mz_phase(const MachZehnderArms& arms, const AtomSpecies& species,
                                  const GravityEnvironment& env, const PulseSequence& seq,
                                  const InternalEnergies& internal, std::size_t n_steps,
                                  const PhysicalConstants& k) {
    require_uniform(env);
    PhaseBreakdown out;
    out.arm_a = integrate_arm_phase(arms.a, species, env, seq, internal, n_steps, k);
    out.arm_b = integrate_arm_phase(arms.b, species, env, seq, internal, n_steps, k);

    const std::vector<double> breaks = merged_breakpoints(arms.a, arms.b);
    const std::vector<std::size_t> seg_a = piece_segments(arms.a, breaks);
    const std::vector<std::size_t> seg_b = piece_segments(arms.b, breaks);
    const auto& sa = arms.a.segments();
    const auto& sb = arms.b.segments();
    const double accel_a = arms.a.acceleration();
    const double accel_b = arms.b.acceleration();
    const double m_i = species.inertial_mass.value();
    const double eta = species.eta;

    const auto xa = [&](double t, std::size_t p) { return sa[seg_a[p]].position(t, accel_a); };
    const auto xb = [&](double t, std::size_t p) { return sb[seg_b[p]].position(t, accel_b); };

    // Arms sharing a free-fall reference are differenced through their small offsets from it.
    const FreeFall& ref = arms.a.reference();
    const bool common = ref == arms.b.reference() && accel_a == accel_b;
    const auto dx = [&](double t, std::size_t p) {
        return common ? sa[seg_a[p]].offset(t) - sb[seg_b[p]].offset(t) : xa(t, p) - xb(t, p);
    };
    const auto dv2 = [&](double t, std::size_t p) {
        if (common) {
            const double oa = sa[seg_a[p]].offset_v;
            const double ob = sb[seg_b[p]].offset_v;
            return (oa - ob) * (2.0 * ref.velocity(t, accel_a) + oa + ob);
        }
        const double a = sa[seg_a[p]].velocity(t, accel_a);
        const double b = sb[seg_b[p]].velocity(t, accel_b);
        return (a - b) * (a + b);
    };
    const double g = env.g().value();
    const auto dphi = [&](double t, std::size_t p) { return g * dx(t, p); };
    const auto ea = [&](std::size_t p) { return internal.of(sa[seg_a[p]].state).value(); };
    const auto eb = [&](std::size_t p) { return internal.of(sb[seg_b[p]].state).value(); };

    PhaseChannels& d = out.differential;
    d.potential = -(eta * m_i / k.hbar) * piecewise_simpson(dphi, breaks, n_steps);
    d.kinetic = (0.5 * m_i / k.hbar) * piecewise_simpson(dv2, breaks, n_steps);
    out.propagation = (m_i / k.hbar) * piecewise_simpson(
        [&](double t, std::size_t p) { return 0.5 * dv2(t, p) - eta * dphi(t, p); }, breaks, n_steps);

    const double rest = piecewise_simpson([&](double, std::size_t p) { return ea(p) - eb(p); }, breaks, n_steps);
    // E_a phi_A - E_b phi_B = E_a (phi_A - phi_B) + (E_a - E_b) phi_B
    const double redshift = piecewise_simpson(
        [&](double t, std::size_t p) {
            const double e_a = ea(p);
            const double e_b = eb(p);
            const double common_part = e_a * dphi(t, p);
            return e_a == e_b ? common_part
                              : common_part + (e_a - e_b) * potential_at(env, Length(xb(t, p))).value();
        },
        breaks, n_steps);
    d.internal = -(rest / k.hbar) - redshift / (k.hbar * k.c2());

    const LaserSums la = laser_sums(arms.a, seq);
    const LaserSums lb = laser_sums(arms.b, seq);
    out.optical_offset = la.optical_sum - lb.optical_sum;
    double separation_sum = la.position_sum - lb.position_sum;
    if (common) {
        CompensatedSum xs;
        for (const auto* arm : {&arms.a, &arms.b}) {
            const double sign = arm == &arms.a ? 1.0 : -1.0;
            for (const auto& kick : arm->kicks()) {
                xs.add(sign * kick.direction * ref.position(kick.time, accel_a));
                xs.add(sign * kick.direction * arm->offset(Time(kick.time)).value());
            }
        }
        separation_sum = xs.value();
    }
    d.laser = seq.kappa().value() * separation_sum + out.optical_offset;
    return out;
}

// ---------------------------------------------------------------------------

ClosedFormInputs ClosedFormInputs::consistent(Mass m_i, double eta, GravPotential phi_g, Length l, Velocity v,
                                              Time t, const PhysicalConstants& k) {
    if (!(m_i.value() > 0.0)) {
        throw Error(Errc::domain, "closed forms need a positive inertial mass");
    }
    ClosedFormInputs in;
    in.m_i = m_i;
    in.eta = eta;
    in.m_g = Mass(eta * m_i.value());
    in.phi_g = phi_g;
    in.l = l;
    in.v = v;
    in.t = t;
    in.lambda_db = Length(2.0 * std::numbers::pi * k.hbar / (m_i.value() * std::abs(v.value())));
    in.e_kin = Energy(0.5 * m_i.value() * v.value() * v.value());
    in.kappa = Wavenumber(m_i.value() * v.value() / k.hbar);
    in.omega_c = compton_frequency(m_i, k);
    return in;
}

void ClosedFormInputs::check_consistency(const PhysicalConstants& k) const {
    const auto off = [](double a, double b) { return relative_deviation(a, b) > 1e-12; };
    if (off(m_g.value(), eta * m_i.value())) {
        throw Error(Errc::config, "closed-form inputs: eta != m_g / m_i");
    }
    if (off(lambda_db.value(), 2.0 * std::numbers::pi * k.hbar / (m_i.value() * std::abs(v.value())))) {
        throw Error(Errc::config, "closed-form inputs: lambda_dB != 2 pi hbar / (m_i v)");
    }
    if (off(e_kin.value(), 0.5 * m_i.value() * v.value() * v.value())) {
        throw Error(Errc::config, "closed-form inputs: E_kin != m_i v^2 / 2");
    }
    if (off(omega_c.value(), m_i.value() * k.c2() / k.hbar)) {
        throw Error(Errc::config, "closed-form inputs: omega_c != m_i c^2 / hbar");
    }
}

Phase velocity_form_phase(const ClosedFormInputs& in, const PhysicalConstants& k) {
    if (in.v.value() == 0.0) {
        throw Error(Errc::domain, "closed form needs v != 0");
    }
    return Phase(-in.m_g.value() * in.phi_g.value() * in.l.value() / (in.v.value() * k.hbar));
}

Phase wavelength_form_phase(const ClosedFormInputs& in, const PhysicalConstants& k) {
    const double reduced = in.lambda_db.value() * kReducedWavelengthConvention;
    return Phase(-in.m_g.value() * in.phi_g.value() * in.l.value() * in.m_i.value() * reduced /
                 (k.hbar * k.hbar));
}

Phase energy_ratio_form_phase(const ClosedFormInputs& in) {
    if (!(in.e_kin.value() > 0.0) || !(in.lambda_db.value() > 0.0)) {
        throw Error(Errc::domain, "closed form needs E_kin > 0 and lambda_dB > 0");
    }
    const double reduced = in.lambda_db.value() * kReducedWavelengthConvention;
    const double mass_ratio = in.m_g.value() / in.m_i.value();
    const double e_g = in.m_i.value() * in.phi_g.value();
    return Phase(-mass_ratio * (e_g / (2.0 * in.e_kin.value())) * (in.l.value() / reduced));
}

Phase compton_form_phase(const ClosedFormInputs& in, Time t, const PhysicalConstants& k) {
    return Phase(-in.eta * in.omega_c.value() * in.phi_g.value() * t.value() / k.c2());
}

Phase compton_form_phase_ep(const ClosedFormInputs& in, Time t, const PhysicalConstants& k) {
    return Phase(-in.omega_c.value() * in.phi_g.value() * t.value() / k.c2());
}

Phase mass_form_phase(const ClosedFormInputs& in, Time t, const PhysicalConstants& k) {
    return Phase(-in.m_g.value() * in.phi_g.value() * t.value() / k.hbar);
}

Phase closed_form_mz_phase(Wavenumber kappa, GravAccel g, Time t, double eta) {
    if (t.value() < 0.0) {
        throw Error(Errc::domain, "pulse separation must be non-negative");
    }
    return Phase(-eta * kappa.value() * g.value() * t.value() * t.value());
}

Phase de_broglie_form_mz_phase(GravAccel g, Time t, Length lambda_db) {
    if (!(lambda_db.value() > 0.0)) {
        throw Error(Errc::domain, "de Broglie wavelength must be positive");
    }
    return Phase(-2.0 * std::numbers::pi * g.value() * t.value() * t.value() / lambda_db.value());
}

Phase parallel_section_phase(Mass m_g, GravAccel g, Length l, Time t, const PhysicalConstants& k) {
    return Phase(-m_g.value() * g.value() * l.value() * t.value() / k.hbar);
}

double relative_deviation(double a, double b) noexcept {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

MachZehnderArms MzScenario::arms(const PhysicalConstants& k) const {
    return build_mz_arms(species, env, sequence(), x0, v0, arm_options, k);
}

PhaseBreakdown MzScenario::run(const PhysicalConstants& k) const {
    const PulseSequence seq = sequence();
    const MachZehnderArms built = build_mz_arms(species, env, seq, x0, v0, arm_options, k);
    return integrate_mz_phase(built, species, env, seq, InternalEnergies::hyperfine(species, k), n_steps, k);
}

EquivalenceReport verify_equivalence_chain(const MzScenario& sc, double tolerance, const PhysicalConstants& k) {
    const AtomSpecies& species = sc.species;
    const double eta = species.eta;
    const PhaseBreakdown breakdown = sc.run(k);

    // Parallel-section mapping: the arms differ by the recoil velocity, sit l = v_r T apart for a time T.
    const Velocity vr = recoil_velocity(species, sc.kappa, k);
    const Length l(vr.value() * sc.t.value());
    const GravAccel g = sc.env.g();
    const GravPotential dphi(g.value() * l.value());

    EquivalenceReport r;
    r.eta = eta;
    r.tolerance = tolerance;
    r.values["numeric"] = breakdown.differential.potential;
    r.values["kappa_g_t2_eta"] = closed_form_mz_phase(sc.kappa, g, sc.t, eta).value();
    r.values["kappa_g_t2"] = closed_form_mz_phase(sc.kappa, g, sc.t, 1.0).value();
    r.values["parallel_section"] = parallel_section_phase(species.gravitational_mass(), g, l, sc.t, k).value();
    if (vr.value() != 0.0) {
        const auto in = ClosedFormInputs::consistent(species.inertial_mass, eta, dphi, l, vr, sc.t, k);
        r.values["velocity_form"] = velocity_form_phase(in, k).value();
        r.values["wavelength_form"] = wavelength_form_phase(in, k).value();
        r.values["energy_ratio_form"] = energy_ratio_form_phase(in).value();
        r.values["compton_ep_form"] = compton_form_phase_ep(in, sc.t, k).value();
        r.values["compton_form"] = compton_form_phase(in, sc.t, k).value();
        r.values["de_broglie_form"] = de_broglie_form_mz_phase(g, sc.t, in.lambda_db).value();
    } else {
        throw Error(Errc::domain, "equivalence chain needs kappa != 0");
    }

    // The EP forms assume m_g = m_i; they are compared after scaling by eta.
    const auto scaled = [&](const std::string& key) {
        const bool ep_form = key == "compton_ep_form" || key == "de_broglie_form" || key == "kappa_g_t2";
        return ep_form ? eta * r.values.at(key) : r.values.at(key);
    };
    for (auto i = r.values.begin(); i != r.values.end(); ++i) {
        for (auto j = std::next(i); j != r.values.end(); ++j) {
            const double dev = relative_deviation(scaled(i->first), scaled(j->first));
            r.deviations[i->first + "|" + j->first] = dev;
            r.max_deviation = std::max(r.max_deviation, dev);
            if (!(dev <= tolerance) && r.failure.empty()) {
                r.failure = i->first + " vs " + j->first;
            }
        }
    }
    r.passed = r.failure.empty();
    return r;
}

} // namespace gravphase
