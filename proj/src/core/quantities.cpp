#include "gravphase/quantities.hpp"

namespace gravphase {

namespace {

void require_non_negative(Mass m) {
    if (m.value() < 0.0) {
        throw Error(Errc::domain, "mass must be non-negative");
    }
}

} // namespace

AngularFrequency compton_frequency(Mass m, const PhysicalConstants& k) {
    require_non_negative(m);
    return AngularFrequency(m.value() * k.c2() / k.hbar);
}

Mass mass_from_compton_frequency(AngularFrequency w, const PhysicalConstants& k) {
    if (w.value() < 0.0) {
        throw Error(Errc::domain, "Compton frequency must be non-negative");
    }
    return Mass(w.value() * k.hbar / k.c2());
}

Mass mass_frequency_roundtrip(Mass m, const PhysicalConstants& k) {
    return mass_from_compton_frequency(compton_frequency(m, k), k);
}

Length compton_wavelength(Mass m, const PhysicalConstants& k) {
    if (m.value() <= 0.0) {
        throw Error(Errc::domain, "Compton wavelength needs a positive mass");
    }
    return Length(k.h / (m.value() * k.c));
}

Length de_broglie_wavelength(Mass m, Velocity v, const PhysicalConstants& k) {
    if (m.value() <= 0.0) {
        throw Error(Errc::domain, "de Broglie wavelength needs a positive mass");
    }
    if (v.value() == 0.0) {
        throw Error(Errc::divide_by_zero, "de Broglie wavelength is infinite at zero velocity");
    }
    return Length(k.h / (m.value() * std::abs(v.value())));
}

Mass photon_mass_equivalent(FrequencyHz nu, const PhysicalConstants& k) {
    return Mass(k.h * nu.value() / k.c2());
}

} // namespace gravphase
