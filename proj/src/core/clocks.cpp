#include "gravphase/clocks.hpp"

#include <numbers>

namespace gravphase {

namespace {

void require_positive_frequency(FrequencyHz nu) {
    if (!(nu.value() > 0.0)) {
        throw Error(Errc::domain, "clock frequency must be positive");
    }
}

} // namespace

void ClockStation::validate() const {
    require_positive_frequency(frequency);
    if (duration.value() < 0.0) {
        throw Error(Errc::domain, "clock duration must be non-negative");
    }
}

Time time_dilation(const GravityEnvironment& env, Length x1, Length x2, Time duration,
                   const PhysicalConstants& k) {
    if (duration.value() < 0.0) {
        throw Error(Errc::domain, "clock duration must be non-negative");
    }
    return Time(duration.value() * potential_difference(env, x1, x2).value() / k.c2());
}

double fractional_redshift(const GravityEnvironment& env, Length x_emit, Length x_receive,
                           const PhysicalConstants& k) {
    return potential_difference(env, x_emit, x_receive).value() / k.c2();
}

FrequencyHz photon_redshift(const GravityEnvironment& env, Length x_emit, Length x_receive,
                            FrequencyHz nu, const PhysicalConstants& k) {
    require_positive_frequency(nu);
    return FrequencyHz(nu.value() * (1.0 + fractional_redshift(env, x_emit, x_receive, k)));
}

Phase clock_phase_deficit(FrequencyHz nu, Time delta_t) {
    require_positive_frequency(nu);
    return Phase(2.0 * std::numbers::pi * nu.value() * delta_t.value());
}

Time resolvable_time_dilation(Phase phase, FrequencyHz nu) {
    require_positive_frequency(nu);
    return Time(phase.value() / (2.0 * std::numbers::pi * nu.value()));
}

} // namespace gravphase
