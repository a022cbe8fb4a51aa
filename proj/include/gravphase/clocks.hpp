#pragma once

#include "gravphase/gravity.hpp"
#include "gravphase/quantities.hpp"

namespace gravphase {

struct ClockStation {
    Length position;
    FrequencyHz frequency;
    Time duration;

    void validate() const;
};

/// Weak-field gravitational time dilation T (phi(x1) - phi(x2)) / c^2.
/// Positive when x1 sits at the higher potential (the clock at x1 runs fast).
Time time_dilation(const GravityEnvironment& env, Length x1, Length x2, Time duration,
                   const PhysicalConstants& k = kCodata2018);

/// Fractional shift (phi(emit) - phi(receive)) / c^2 of a photon travelling emit -> receive.
double fractional_redshift(const GravityEnvironment& env, Length x_emit, Length x_receive,
                           const PhysicalConstants& k = kCodata2018);

/// Received frequency nu (1 + fractional_redshift). Requires nu > 0.
FrequencyHz photon_redshift(const GravityEnvironment& env, Length x_emit, Length x_receive,
                            FrequencyHz nu, const PhysicalConstants& k = kCodata2018);

/// Accumulated phase difference 2 pi nu dT of a clock running dT ahead.
Phase clock_phase_deficit(FrequencyHz nu, Time delta_t);

/// Smallest time dilation resolvable from a phase difference, dT = phase / (2 pi nu).
Time resolvable_time_dilation(Phase phase, FrequencyHz nu);

} // namespace gravphase
