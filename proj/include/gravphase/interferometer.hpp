#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gravphase/phase.hpp"

namespace gravphase {

// Exit-port readout. P_e = (1 - cos dPhi) / 2 is the normative convention.
struct PortPopulations {
    double excited = 0.0;
    double ground = 1.0;
};

PortPopulations port_population(Phase delta_phase);

enum class ScanVariable { pulse_separation, gravity, laser_phase };

ScanVariable parse_scan_variable(const std::string& name);
const char* to_string(ScanVariable v) noexcept;

struct ScanPoint {
    double value;
    double phase;
    PortPopulations populations;
};

/// Readout vs scanned value, each point from the numerical phase engine.
/// laser_phase scans the optical phase of the final beamsplitter.
std::vector<ScanPoint> fringe_scan(const MzScenario& scenario, ScanVariable variable,
                                   const std::vector<double>& grid, const PhysicalConstants& k = kCodata2018);

struct FringePattern {
    std::vector<double> x;
    std::vector<double> intensity;
    double spacing = 0.0;          // mean distance between successive maxima
    double expected_spacing = 0.0; // 2 pi hbar / (m_i |v1 - v2|)
    std::size_t peaks = 0;
};

inline constexpr double kMinSamplesPerFringe = 16.0;

/// Two equal-amplitude plane waves with momenta m_i v1 and m_i v2 over [-window/2, window/2].
FringePattern spatial_fringes(const AtomSpecies& species, Velocity v1, Velocity v2, Length window,
                              std::size_t samples, const PhysicalConstants& k = kCodata2018);

struct FringeFallReport {
    double fall_distance = 0.0;   // 2 g T^2
    double lambda_db = 0.0;       // 2 pi / kappa
    double fringe_phase = 0.0;    // 2 pi fall / (2 lambda_dB)
    double closed_form = 0.0;     // kappa g T^2
    double deviation = 0.0;
    bool passed = false;
};

FringeFallReport fringe_fall_check(const AtomSpecies& species, Wavenumber kappa, GravAccel g, Time t,
                                   const PhysicalConstants& k = kCodata2018);

/// CSV (t, x_A, x_B, state_A, state_B) sampled every dt over the full span, endpoint included.
std::string trajectory_csv(const MachZehnderArms& arms, Time dt);

} // namespace gravphase
