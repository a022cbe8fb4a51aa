#pragma once

#include <cmath>
#include <compare>
#include <numbers>
#include <string>

#include "gravphase/error.hpp"

namespace gravphase {

// Strongly typed SI scalar. Each Tag is a distinct physical quantity, so a
// Length can never be passed where a Wavenumber is expected. Values are
// always finite; construction from a non-finite double throws.
template <typename Tag>
class Quantity {
public:
    constexpr Quantity() = default;
    explicit Quantity(double v) : value_(v) {
        if (!std::isfinite(v)) {
            throw Error(Errc::invalid_quantity,
                        std::string("non-finite ") + Tag::name + " value");
        }
    }

    constexpr double value() const noexcept { return value_; }

    friend Quantity operator+(Quantity a, Quantity b) { return Quantity(a.value_ + b.value_); }
    friend Quantity operator-(Quantity a, Quantity b) { return Quantity(a.value_ - b.value_); }
    friend Quantity operator-(Quantity a) { return Quantity(-a.value_); }
    friend Quantity operator*(Quantity a, double s) { return Quantity(a.value_ * s); }
    friend Quantity operator*(double s, Quantity a) { return Quantity(a.value_ * s); }
    friend Quantity operator/(Quantity a, double s) { return Quantity(a.value_ / s); }
    friend double operator/(Quantity a, Quantity b) { return a.value_ / b.value_; }
    Quantity& operator+=(Quantity o) { return *this = *this + o; }
    Quantity& operator-=(Quantity o) { return *this = *this - o; }

    friend constexpr auto operator<=>(Quantity, Quantity) = default;

private:
    double value_ = 0.0;
};

namespace tag {
struct Mass { static constexpr const char* name = "mass"; };
struct Length { static constexpr const char* name = "length"; };
struct Time { static constexpr const char* name = "time"; };
struct Velocity { static constexpr const char* name = "velocity"; };
struct AngularFrequency { static constexpr const char* name = "angular frequency"; };
struct FrequencyHz { static constexpr const char* name = "frequency"; };
struct Phase { static constexpr const char* name = "phase"; };
struct Energy { static constexpr const char* name = "energy"; };
struct Wavenumber { static constexpr const char* name = "wavenumber"; };
struct GravAccel { static constexpr const char* name = "gravitational acceleration"; };
struct GravPotential { static constexpr const char* name = "gravitational potential"; };
struct Dimensionless { static constexpr const char* name = "dimensionless"; };
} // namespace tag

using Mass = Quantity<tag::Mass>;                         // kg
using Length = Quantity<tag::Length>;                     // m
using Time = Quantity<tag::Time>;                         // s
using Velocity = Quantity<tag::Velocity>;                 // m/s
using AngularFrequency = Quantity<tag::AngularFrequency>; // rad/s
using FrequencyHz = Quantity<tag::FrequencyHz>;           // 1/s
using Phase = Quantity<tag::Phase>;                       // rad, unwrapped
using Energy = Quantity<tag::Energy>;                     // J
using Wavenumber = Quantity<tag::Wavenumber>;             // rad/m
using GravAccel = Quantity<tag::GravAccel>;               // m/s^2
using GravPotential = Quantity<tag::GravPotential>;       // m^2/s^2
using Dimensionless = Quantity<tag::Dimensionless>;

// Pinned CODATA-2018 exact values. Every formula in the library reads its
// constants from here; the struct form exists so isolated evaluations can
// use hypothetical values (e.g. a rescaled c).
struct PhysicalConstants {
    double c = 299792458.0;          // m/s
    double h = 6.62607015e-34;       // J s
    double hbar = 6.62607015e-34 / (2.0 * std::numbers::pi); // J s

    double c2() const noexcept { return c * c; }
};

inline constexpr const char* kConstantsVersion = "CODATA-2018";
inline const PhysicalConstants kCodata2018{};

inline AngularFrequency to_angular(FrequencyHz nu) {
    return AngularFrequency(2.0 * std::numbers::pi * nu.value());
}

/// Compton angular frequency m c^2 / hbar. Zero mass gives zero.
AngularFrequency compton_frequency(Mass m, const PhysicalConstants& k = kCodata2018);

/// Mass corresponding to a Compton angular frequency (inverse of compton_frequency).
Mass mass_from_compton_frequency(AngularFrequency w, const PhysicalConstants& k = kCodata2018);

/// compton_frequency followed by its inverse.
Mass mass_frequency_roundtrip(Mass m, const PhysicalConstants& k = kCodata2018);

/// Compton wavelength h / (m c).
Length compton_wavelength(Mass m, const PhysicalConstants& k = kCodata2018);

/// de Broglie wavelength h / (m |v|). Throws divide_by_zero for v == 0.
Length de_broglie_wavelength(Mass m, Velocity v, const PhysicalConstants& k = kCodata2018);

/// Mass-equivalent of a photon energy, h nu / c^2.
Mass photon_mass_equivalent(FrequencyHz nu, const PhysicalConstants& k = kCodata2018);

} // namespace gravphase
