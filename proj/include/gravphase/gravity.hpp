#pragma once

#include "gravphase/quantities.hpp"
#include "gravphase/species.hpp"

namespace gravphase {

enum class GravityModel { uniform, point_mass };

// Vertical 1-D environment, +x up. The uniform model has phi(x) = g x + offset
// (offset is the gauge, zero by default); the point-mass model has
// phi(r) = -GM/r for r > 0 and only serves clock/redshift scenarios.
class GravityEnvironment {
public:
    static GravityEnvironment uniform(GravAccel g, GravPotential gauge_offset = GravPotential(0.0));
    static GravityEnvironment point_mass(double gm, Length r0);

    GravityModel model() const noexcept { return model_; }
    GravAccel g() const noexcept { return g_; }
    double gm() const noexcept { return gm_; }
    Length r0() const noexcept { return r0_; }
    GravPotential gauge_offset() const noexcept { return offset_; }

    /// Acceleration on a test mass with m_g/m_i = eta (uniform model only).
    double acceleration(double eta) const;

    GravityEnvironment with_gauge_offset(GravPotential offset) const;

private:
    GravityModel model_ = GravityModel::uniform;
    GravAccel g_;
    double gm_ = 0.0;
    Length r0_;
    GravPotential offset_;
};

GravPotential potential_at(const GravityEnvironment& env, Length x);

/// phi(x1) - phi(x2). For the uniform model this is g (x1 - x2) exactly, independent of the gauge.
GravPotential potential_difference(const GravityEnvironment& env, Length x1, Length x2);

enum class CouplingSource { rest_mass, internal_state, photon };

struct CouplingEnergy {
    Energy value;
    CouplingSource source;
};

/// Universal weak-field coupling -E phi / c^2.
Energy coupling_energy(Energy total, GravPotential phi, const PhysicalConstants& k = kCodata2018);

/// Photon coupling -h nu phi / c^2.
CouplingEnergy photon_coupling_energy(FrequencyHz nu, GravPotential phi,
                                      const PhysicalConstants& k = kCodata2018);

/// Massive coupling -(eta m_i + E_i / c^2) phi.
CouplingEnergy massive_coupling_energy(const AtomSpecies& species, Energy internal, GravPotential phi,
                                       const PhysicalConstants& k = kCodata2018);

} // namespace gravphase
