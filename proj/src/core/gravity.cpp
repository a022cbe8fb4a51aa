#include "gravphase/gravity.hpp"

namespace gravphase {

GravityEnvironment GravityEnvironment::uniform(GravAccel g, GravPotential gauge_offset) {
    GravityEnvironment env;
    env.model_ = GravityModel::uniform;
    env.g_ = g;
    env.offset_ = gauge_offset;
    return env;
}

GravityEnvironment GravityEnvironment::point_mass(double gm, Length r0) {
    if (!std::isfinite(gm) || gm < 0.0) {
        throw Error(Errc::config, "environment.gm must be finite and non-negative");
    }
    GravityEnvironment env;
    env.model_ = GravityModel::point_mass;
    env.gm_ = gm;
    env.r0_ = r0;
    return env;
}

double GravityEnvironment::acceleration(double eta) const {
    if (model_ != GravityModel::uniform) {
        throw Error(Errc::unsupported_sequence, "interferometer arms need a uniform environment");
    }
    return -eta * g_.value();
}

GravityEnvironment GravityEnvironment::with_gauge_offset(GravPotential offset) const {
    GravityEnvironment env = *this;
    env.offset_ = offset;
    return env;
}

namespace {

double point_mass_potential(double gm, double r) {
    if (!(r > 0.0)) {
        throw Error(Errc::domain, "point-mass potential needs r > 0");
    }
    return -gm / r;
}

} // namespace

GravPotential potential_at(const GravityEnvironment& env, Length x) {
    if (env.model() == GravityModel::uniform) {
        return GravPotential(env.g().value() * x.value() + env.gauge_offset().value());
    }
    return GravPotential(point_mass_potential(env.gm(), x.value()));
}

GravPotential potential_difference(const GravityEnvironment& env, Length x1, Length x2) {
    if (env.model() == GravityModel::uniform) {
        return GravPotential(env.g().value() * (x1.value() - x2.value()));
    }
    return GravPotential(point_mass_potential(env.gm(), x1.value()) -
                         point_mass_potential(env.gm(), x2.value()));
}

Energy coupling_energy(Energy total, GravPotential phi, const PhysicalConstants& k) {
    return Energy(-total.value() * phi.value() / k.c2());
}

CouplingEnergy photon_coupling_energy(FrequencyHz nu, GravPotential phi, const PhysicalConstants& k) {
    return {coupling_energy(Energy(k.h * nu.value()), phi, k), CouplingSource::photon};
}

CouplingEnergy massive_coupling_energy(const AtomSpecies& species, Energy internal, GravPotential phi,
                                       const PhysicalConstants& k) {
    // eta is applied last so the result is exactly linear in eta when E_i = 0.
    const double rest = species.eta * (species.inertial_mass.value() * phi.value());
    const double internal_part = internal.value() / k.c2() * phi.value();
    return {Energy(-(rest + internal_part)),
            internal.value() == 0.0 ? CouplingSource::rest_mass : CouplingSource::internal_state};
}

} // namespace gravphase
