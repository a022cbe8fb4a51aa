#pragma once

#include <array>
#include <optional>
#include <vector>

#include "gravphase/gravity.hpp"
#include "gravphase/quantities.hpp"
#include "gravphase/species.hpp"

namespace gravphase {

enum class PulseKind { beamsplitter, mirror };
enum class InternalState { ground, excited };

char state_label(InternalState s) noexcept;

struct LaserPulse {
    Time time;
    Wavenumber kappa;   // effective two-photon wavenumber, hbar kappa = hbar k1 - hbar k2
    PulseKind kind = PulseKind::beamsplitter;
    Phase optical_phase;
};

class PulseSequence {
public:
    PulseSequence() = default;
    explicit PulseSequence(std::vector<LaserPulse> pulses);

    /// pi/2 at 0, pi at T, pi/2 at 2T, all with the same kappa.
    static PulseSequence mach_zehnder(Wavenumber kappa, Time pulse_separation,
                                      std::array<Phase, 3> optical_phases = {});

    const std::vector<LaserPulse>& pulses() const noexcept { return pulses_; }
    bool is_canonical_mach_zehnder() const;
    Time pulse_separation() const;
    Wavenumber kappa() const;

private:
    std::vector<LaserPulse> pulses_;
};

/// Velocity kick hbar kappa / m_i of a two-photon transition.
Velocity recoil_velocity(const AtomSpecies& species, Wavenumber kappa,
                         const PhysicalConstants& k = kCodata2018);

// Free fall x(t) = x0 + v0 (t - t0) + a (t - t0)^2 / 2 shared by the arms of one interferometer.
struct FreeFall {
    double t0 = 0.0;
    double x0 = 0.0;
    double v0 = 0.0;

    double position(double t, double accel) const noexcept {
        const double s = t - t0;
        return x0 + v0 * s + 0.5 * accel * s * s;
    }
    double velocity(double t, double accel) const noexcept { return v0 + accel * (t - t0); }
    bool operator==(const FreeFall&) const = default;
};

// One parabolic piece x(t) = x0 + v0 (t - t_start) + a (t - t_start)^2 / 2.
// The offset from the arm's free-fall reference is linear within a piece:
// offset(t) = offset_x0 + offset_v (t - t_start).
struct TrajectorySegment {
    double t_start;
    double t_end;
    double x0;
    double v0;
    InternalState state;
    double offset_x0 = 0.0;
    double offset_v = 0.0;

    double position(double t, double accel) const noexcept {
        const double s = t - t_start;
        return x0 + v0 * s + 0.5 * accel * s * s;
    }
    double velocity(double t, double accel) const noexcept { return v0 + accel * (t - t_start); }
    double offset(double t) const noexcept { return offset_x0 + offset_v * (t - t_start); }
};

enum class ArmLabel { a, b };

// Momentum transfer received by an arm from pulse `pulse_index`: +1 absorbs hbar kappa, -1 emits it.
// The final beamsplitter entry records the projection onto the tracked exit port.
struct ArmKick {
    std::size_t pulse_index;
    double time;
    int direction;
};

class ArmTrajectory {
public:
    /// Without a reference, the first segment's launch state is used and offsets are derived by
    /// subtraction. With one, the segments' offsets must already be relative to it.
    ArmTrajectory(ArmLabel label, double acceleration, std::vector<TrajectorySegment> segments,
                  std::vector<ArmKick> kicks = {}, std::optional<FreeFall> reference = std::nullopt);

    ArmLabel label() const noexcept { return label_; }
    double acceleration() const noexcept { return accel_; }
    const std::vector<TrajectorySegment>& segments() const noexcept { return segments_; }
    const std::vector<ArmKick>& kicks() const noexcept { return kicks_; }
    double t_begin() const noexcept { return segments_.front().t_start; }
    double t_end() const noexcept { return segments_.back().t_end; }
    const FreeFall& reference() const noexcept { return reference_; }

    /// Throws range error outside [t_begin, t_end]. At a pulse time the later segment is used.
    Length position(Time t) const;
    Velocity velocity(Time t) const;
    InternalState state(Time t) const;
    /// position(t) minus the reference free fall.
    Length offset(Time t) const;

private:
    const TrajectorySegment& segment_at(double t) const;

    ArmLabel label_;
    double accel_;
    std::vector<TrajectorySegment> segments_;
    std::vector<ArmKick> kicks_;
    FreeFall reference_;
};

Length arm_position(const ArmTrajectory& arm, Time t);

struct MachZehnderArms {
    ArmTrajectory a;  // kicked at 0, kicked back at T: upper arm
    ArmTrajectory b;  // kicked at T: lower arm
};

struct ArmOptions {
    // When false the pi pulse still moves momentum but leaves the internal-state labels unchanged.
    bool pi_pulse_swaps_internal_state = true;
};

/// Classical world lines of both Mach-Zehnder arms under acceleration -eta g.
MachZehnderArms build_mz_arms(const AtomSpecies& species, const GravityEnvironment& env,
                              const PulseSequence& seq, Length x0, Velocity v0,
                              ArmOptions options = {}, const PhysicalConstants& k = kCodata2018);

} // namespace gravphase
