#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <limits>
#include <numbers>

#include "gravphase/quantities.hpp"
#include "gravphase/species.hpp"
#include "support.hpp"

using namespace gravphase;
using gptest::rel;

TEST_CASE("pinned constants") {
    CHECK(kCodata2018.c == 299792458.0);
    CHECK(kCodata2018.h == 6.62607015e-34);
    const double hbar = kCodata2018.h / (2.0 * std::numbers::pi);
    CHECK(std::abs(kCodata2018.hbar - hbar) <= std::numeric_limits<double>::epsilon() * hbar);
    CHECK(std::string(kConstantsVersion) == "CODATA-2018");
}

TEST_CASE("quantities reject non-finite values") {
    CHECK_THROWS_AS(Mass(std::numeric_limits<double>::quiet_NaN()), Error);
    CHECK_THROWS_AS(Length(std::numeric_limits<double>::infinity()), Error);
    try {
        Time(-std::numeric_limits<double>::infinity());
        FAIL("expected throw");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::invalid_quantity);
    }
}

TEST_CASE("quantity arithmetic stays within a tag") {
    const Length a(1.5);
    const Length b(0.5);
    CHECK((a + b).value() == 2.0);
    CHECK((a - b).value() == 1.0);
    CHECK((a * 2.0).value() == 3.0);
    CHECK((-a).value() == -1.5);
    CHECK(a > b);
}

TEST_CASE("compton frequency") {
    CHECK(compton_frequency(Mass(0.0)).value() == 0.0);
    const double expected = 1.0 * 299792458.0 * 299792458.0 / kCodata2018.hbar;
    CHECK(rel(compton_frequency(Mass(1.0)).value(), expected) <= 1e-15);
    CHECK(rel(compton_frequency(Mass(1.0)).value(), 8.522465361751015e50) <= 1e-12);
    CHECK_THROWS_AS(compton_frequency(Mass(-1.0)), Error);
}

TEST_CASE("mass <-> frequency round trip") {
    for (double m : {2.207e-25, 1.443e-25, 1e-30}) {
        CHECK(rel(mass_frequency_roundtrip(Mass(m)).value(), m) <= 1e-15);
        CHECK(rel(mass_from_compton_frequency(compton_frequency(Mass(m))).value(), m) <= 1e-15);
    }
}

TEST_CASE("compton wavelength of cesium is ~1e-17 m") {
    const double lc = compton_wavelength(Mass(2.207e-25)).value();
    CHECK(rel(lc, 1.0014585837354931e-17) <= 1e-12);
    CHECK(lc > 1e-18);
    CHECK(lc < 1e-16);
    CHECK_THROWS_AS(compton_wavelength(Mass(0.0)), Error);
}

TEST_CASE("de Broglie wavelength") {
    const Mass m(2.207e-25);
    const double l = de_broglie_wavelength(m, Velocity(0.03)).value();
    CHECK(rel(l, 1.0007657680108745e-07) <= 1e-12);
    CHECK(de_broglie_wavelength(m, Velocity(0.06)).value() * 2.0 == l);

    const double kappa = 1.4748e7;
    const double v = kCodata2018.hbar * kappa / m.value();
    CHECK(rel(de_broglie_wavelength(m, Velocity(v)).value(), 2.0 * std::numbers::pi / kappa) <= 1e-14);

    try {
        de_broglie_wavelength(m, Velocity(0.0));
        FAIL("expected throw");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::divide_by_zero);
    }
}

TEST_CASE("property: lambda_dB * m v == h") {
    auto g = gptest::rng(1);
    for (int i = 0; i < 1000; ++i) {
        const double m = std::pow(10.0, gptest::uniform(g, -31.0, -20.0));
        const double v = std::pow(10.0, gptest::uniform(g, -4.0, 3.0));
        const double l = de_broglie_wavelength(Mass(m), Velocity(v)).value();
        CHECK(rel(l * m * v, kCodata2018.h) <= 1e-12);
    }
}

TEST_CASE("photon mass equivalent") {
    const double nu = 1e-35 * kCodata2018.c2() / kCodata2018.h;
    CHECK(rel(photon_mass_equivalent(FrequencyHz(nu)).value(), 1e-35) <= 1e-15);
}

TEST_CASE("species presets") {
    const AtomSpecies cs = cesium133();
    CHECK(rel(cs.inertial_mass.value(), 132.905451961 * 1.66053906660e-27) <= 1e-15);
    CHECK(cs.hyperfine_splitting.value() == 9192631770.0);
    CHECK(cs.eta == 1.0);
    CHECK(rel(cs.optical_frequency().value(), 3.5173e14) <= 1e-4);

    const AtomSpecies rb = rubidium87();
    CHECK(rel(rb.inertial_mass.value(), 1.443e-25) <= 1e-3);

    CHECK(species_preset("cs133").has_value());
    CHECK(species_preset("rb87").has_value());
    CHECK_FALSE(species_preset("unobtainium").has_value());

    AtomSpecies bad = cs;
    bad.inertial_mass = Mass(0.0);
    CHECK_THROWS_AS(bad.validate(), Error);
}
