#include "gravphase/sequence.hpp"

#include <algorithm>

namespace gravphase {

char state_label(InternalState s) noexcept { return s == InternalState::ground ? 'g' : 'e'; }

PulseSequence::PulseSequence(std::vector<LaserPulse> pulses) : pulses_(std::move(pulses)) {
    for (std::size_t i = 1; i < pulses_.size(); ++i) {
        if (!(pulses_[i].time > pulses_[i - 1].time)) {
            throw Error(Errc::unsupported_sequence, "pulses must be strictly time-ordered");
        }
        if (pulses_[i].kappa != pulses_[0].kappa) {
            throw Error(Errc::unsupported_sequence, "all pulses of a sequence share one kappa");
        }
    }
}

PulseSequence PulseSequence::mach_zehnder(Wavenumber kappa, Time pulse_separation,
                                          std::array<Phase, 3> optical_phases) {
    if (!(pulse_separation.value() > 0.0)) {
        throw Error(Errc::config, "sequence.T must be positive");
    }
    const double t = pulse_separation.value();
    return PulseSequence({
        {Time(0.0), kappa, PulseKind::beamsplitter, optical_phases[0]},
        {Time(t), kappa, PulseKind::mirror, optical_phases[1]},
        {Time(2.0 * t), kappa, PulseKind::beamsplitter, optical_phases[2]},
    });
}

bool PulseSequence::is_canonical_mach_zehnder() const {
    if (pulses_.size() != 3) {
        return false;
    }
    const auto& p = pulses_;
    const double t = p[1].time.value();
    return p[0].time.value() == 0.0 && t > 0.0 && p[2].time.value() == 2.0 * t &&
           p[0].kind == PulseKind::beamsplitter && p[1].kind == PulseKind::mirror &&
           p[2].kind == PulseKind::beamsplitter;
}

Time PulseSequence::pulse_separation() const {
    if (!is_canonical_mach_zehnder()) {
        throw Error(Errc::unsupported_sequence, "not a canonical pi/2-pi-pi/2 sequence");
    }
    return pulses_[1].time;
}

Wavenumber PulseSequence::kappa() const {
    if (pulses_.empty()) {
        throw Error(Errc::unsupported_sequence, "empty pulse sequence");
    }
    return pulses_.front().kappa;
}

Velocity recoil_velocity(const AtomSpecies& species, Wavenumber kappa, const PhysicalConstants& k) {
    if (!(species.inertial_mass.value() > 0.0)) {
        throw Error(Errc::domain, "recoil velocity needs a positive inertial mass");
    }
    return Velocity(k.hbar * kappa.value() / species.inertial_mass.value());
}

ArmTrajectory::ArmTrajectory(ArmLabel label, double acceleration, std::vector<TrajectorySegment> segments,
                             std::vector<ArmKick> kicks, std::optional<FreeFall> reference)
    : label_(label), accel_(acceleration), segments_(std::move(segments)), kicks_(std::move(kicks)) {
    if (segments_.empty()) {
        throw Error(Errc::unsupported_sequence, "arm trajectory needs at least one segment");
    }
    for (std::size_t i = 1; i < segments_.size(); ++i) {
        if (segments_[i].t_start != segments_[i - 1].t_end) {
            throw Error(Errc::unsupported_sequence, "arm segments must tile the sequence span");
        }
    }
    if (reference) {
        reference_ = *reference;
    } else {
        reference_ = {segments_.front().t_start, segments_.front().x0, segments_.front().v0};
        for (auto& s : segments_) {
            s.offset_x0 = s.x0 - reference_.position(s.t_start, accel_);
            s.offset_v = s.v0 - reference_.velocity(s.t_start, accel_);
        }
    }
}

const TrajectorySegment& ArmTrajectory::segment_at(double t) const {
    if (!(t >= t_begin() && t <= t_end())) {
        throw Error(Errc::range, "time outside the arm trajectory span");
    }
    auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                               [](double value, const TrajectorySegment& s) { return value < s.t_start; });
    return *(it == segments_.begin() ? it : std::prev(it));
}

Length ArmTrajectory::position(Time t) const {
    return Length(segment_at(t.value()).position(t.value(), accel_));
}

Velocity ArmTrajectory::velocity(Time t) const {
    return Velocity(segment_at(t.value()).velocity(t.value(), accel_));
}

InternalState ArmTrajectory::state(Time t) const { return segment_at(t.value()).state; }

Length ArmTrajectory::offset(Time t) const { return Length(segment_at(t.value()).offset(t.value())); }

Length arm_position(const ArmTrajectory& arm, Time t) { return arm.position(t); }

MachZehnderArms build_mz_arms(const AtomSpecies& species, const GravityEnvironment& env,
                              const PulseSequence& seq, Length x0, Velocity v0, ArmOptions options,
                              const PhysicalConstants& k) {
    if (!seq.is_canonical_mach_zehnder()) {
        throw Error(Errc::unsupported_sequence, "only the canonical pi/2-pi-pi/2 sequence is supported");
    }
    const double accel = env.acceleration(species.eta);
    const double vr = recoil_velocity(species, seq.kappa(), k).value();
    const double t1 = seq.pulses()[1].time.value();
    const double t2 = seq.pulses()[2].time.value();

    // Free fall of the unkicked launch state, evaluated at the pi pulse.
    const double x_mid = x0.value() + v0.value() * t1 + 0.5 * accel * t1 * t1;
    const double v_mid = v0.value() + accel * t1;

    // Arm A: |e, +hbar kappa> on [0, T], back to |g, 0> at T.
    const double xa_mid = x_mid + vr * t1;
    // Arm B: |g, 0> on [0, T], |e, +hbar kappa> after T.
    const auto after_pi = [&](InternalState before) {
        if (!options.pi_pulse_swaps_internal_state) {
            return before;
        }
        return before == InternalState::ground ? InternalState::excited : InternalState::ground;
    };

    // Offsets from the unkicked free fall are exact small numbers, so arm differences never
    // subtract two large absolute positions.
    const FreeFall ref{0.0, x0.value(), v0.value()};
    ArmTrajectory a(ArmLabel::a, accel,
                    {{0.0, t1, x0.value(), v0.value() + vr, InternalState::excited, 0.0, vr},
                     {t1, t2, xa_mid, v_mid, after_pi(InternalState::excited), vr * t1, 0.0}},
                    {{0, 0.0, +1}, {1, t1, -1}}, ref);
    ArmTrajectory b(ArmLabel::b, accel,
                    {{0.0, t1, x0.value(), v0.value(), InternalState::ground, 0.0, 0.0},
                     {t1, t2, x_mid, v_mid + vr, after_pi(InternalState::ground), 0.0, vr}},
                    {{1, t1, +1}, {2, t2, -1}}, ref);
    return {std::move(a), std::move(b)};
}

} // namespace gravphase
