#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "gravphase/quantities.hpp"

namespace gravphase {

struct AtomSpecies {
    std::string name;
    Mass inertial_mass;
    double eta = 1.0;                  // m_g / m_i
    FrequencyHz hyperfine_splitting;   // ground-state clock transition
    Length optical_wavelength;         // one-photon wavelength of the Raman beams

    Mass gravitational_mass() const { return Mass(eta * inertial_mass.value()); }
    Energy hyperfine_energy(const PhysicalConstants& k = kCodata2018) const {
        return Energy(k.h * hyperfine_splitting.value());
    }
    FrequencyHz optical_frequency(const PhysicalConstants& k = kCodata2018) const {
        return FrequencyHz(k.c / optical_wavelength.value());
    }

    void validate() const;
};

// Cesium-133: D2 line, 9.192631770 GHz clock transition.
AtomSpecies cesium133();
// Rubidium-87: D2 line, 6.834682611 GHz hyperfine splitting.
AtomSpecies rubidium87();

/// Looks up a preset by name ("cs133", "cesium", "rb87", "rubidium", case-insensitive).
std::optional<AtomSpecies> species_preset(std::string_view name);

} // namespace gravphase
