#include "gravphase/species.hpp"

#include <algorithm>
#include <cctype>

namespace gravphase {

namespace {
constexpr double kAtomicMassUnit = 1.66053906660e-27; // kg, CODATA-2018
}

void AtomSpecies::validate() const {
    if (inertial_mass.value() <= 0.0) {
        throw Error(Errc::config, "species.mass must be positive");
    }
    if (eta < 0.0 || !std::isfinite(eta)) {
        throw Error(Errc::config, "species.eta must be finite and non-negative");
    }
    if (hyperfine_splitting.value() < 0.0) {
        throw Error(Errc::config, "species.hyperfine_hz must be non-negative");
    }
    if (optical_wavelength.value() <= 0.0) {
        throw Error(Errc::config, "species.optical_wavelength must be positive");
    }
}

AtomSpecies cesium133() {
    return AtomSpecies{"cs133", Mass(132.905451961 * kAtomicMassUnit), 1.0,
                       FrequencyHz(9192631770.0), Length(852.34727582e-9)};
}

AtomSpecies rubidium87() {
    return AtomSpecies{"rb87", Mass(86.909180527 * kAtomicMassUnit), 1.0,
                       FrequencyHz(6834682610.904), Length(780.241209686e-9)};
}

std::optional<AtomSpecies> species_preset(std::string_view name) {
    std::string key(name);
    std::transform(key.begin(), key.end(), key.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    if (key == "cs133" || key == "cesium" || key == "cesium-133" || key == "cs") {
        return cesium133();
    }
    if (key == "rb87" || key == "rubidium" || key == "rubidium-87" || key == "rb") {
        return rubidium87();
    }
    return std::nullopt;
}

} // namespace gravphase
