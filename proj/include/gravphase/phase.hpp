#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <numbers>
#include <string>

#include "gravphase/gravity.hpp"
#include "gravphase/quantities.hpp"
#include "gravphase/sequence.hpp"
#include "gravphase/species.hpp"

namespace gravphase {

// Phase channels of one arm, or of arm A minus arm B. All values in radians.
//   potential: -(1/hbar) Int m_g phi(x(t)) dt
//   kinetic:   (1/hbar) Int m_i v^2 / 2 dt
//   laser:     sum over kicks of direction * (kappa x(t_p) + phi_L)
//   internal:  -(1/hbar) Int E_i(t) (1 + phi(x(t)) / c^2) dt
struct PhaseChannels {
    double potential = 0.0;
    double kinetic = 0.0;
    double laser = 0.0;
    double internal = 0.0;

    double total() const noexcept { return potential + kinetic + laser + internal; }
};

struct PhaseBreakdown {
    PhaseChannels arm_a;
    PhaseChannels arm_b;
    PhaseChannels differential;
    // kinetic + potential of A minus B, integrated as a single Lagrangian integrand.
    double propagation = 0.0;
    // Laser-phase offset phi_1 - 2 phi_2 + phi_3 carried by the optical phases alone.
    double optical_offset = 0.0;

    /// The gravimeter observable: potential-channel differential plus the optical offset.
    double observable() const noexcept { return differential.potential + optical_offset; }
};

struct InternalEnergies {
    Energy ground{0.0};
    Energy excited{0.0};

    static InternalEnergies hyperfine(const AtomSpecies& species, const PhysicalConstants& k = kCodata2018) {
        return {Energy(0.0), species.hyperfine_energy(k)};
    }
    Energy of(InternalState s) const noexcept { return s == InternalState::ground ? ground : excited; }
};

inline constexpr std::size_t kDefaultSimpsonSteps = 1000;

/// Phase channels accumulated along one arm.
PhaseChannels integrate_arm_phase(const ArmTrajectory& arm, const AtomSpecies& species,
                                  const GravityEnvironment& env, const PulseSequence& seq,
                                  const InternalEnergies& internal, std::size_t n_steps = kDefaultSimpsonSteps,
                                  const PhysicalConstants& k = kCodata2018);

/// Both arms plus their difference. Differentials are integrated from pointwise arm differences.
PhaseBreakdown integrate_mz_phase(const MachZehnderArms& arms, const AtomSpecies& species,
                                  const GravityEnvironment& env, const PulseSequence& seq,
                                  const InternalEnergies& internal, std::size_t n_steps = kDefaultSimpsonSteps,
                                  const PhysicalConstants& k = kCodata2018);

// ---------------------------------------------------------------------------
// Closed forms

// lambda_dB = 2 pi hbar / (m_i v) enters the 1/lambda forms as the reduced
// wavelength lambda_dB / (2 pi); with this factor the mass, wavelength and
// kinetic-energy forms are the same number.
inline constexpr double kReducedWavelengthConvention = 1.0 / (2.0 * std::numbers::pi);

struct ClosedFormInputs {
    Mass m_g;
    Mass m_i;
    double eta = 1.0;
    GravPotential phi_g;   // potential seen by the path (or difference between paths)
    Length l;
    Velocity v;
    Length lambda_db;
    Energy e_kin;
    Wavenumber kappa;
    Time t;
    AngularFrequency omega_c;

    /// Derives m_g, lambda_dB, E_kin, kappa = m_i v / hbar and omega_c from the primary inputs.
    static ClosedFormInputs consistent(Mass m_i, double eta, GravPotential phi_g, Length l, Velocity v,
                                       Time t, const PhysicalConstants& k = kCodata2018);

    /// Throws config error if the derived fields disagree with the primary ones beyond 1e-12 relative.
    void check_consistency(const PhysicalConstants& k = kCodata2018) const;
};

/// -m_g phi l / (v hbar).
Phase velocity_form_phase(const ClosedFormInputs& in, const PhysicalConstants& k = kCodata2018);
/// -m_g phi l m_i lambda / hbar^2 with the reduced-wavelength convention.
Phase wavelength_form_phase(const ClosedFormInputs& in, const PhysicalConstants& k = kCodata2018);
/// -(m_g/m_i) (E_g / 2 E_kin) (l / lambda), E_g = m_i phi, reduced-wavelength convention.
Phase energy_ratio_form_phase(const ClosedFormInputs& in);
/// -(m_g/m_i) omega_c phi T / c^2.
Phase compton_form_phase(const ClosedFormInputs& in, Time t, const PhysicalConstants& k = kCodata2018);
/// -omega_c phi T / c^2, the equivalence-principle form.
Phase compton_form_phase_ep(const ClosedFormInputs& in, Time t, const PhysicalConstants& k = kCodata2018);
/// -m_g phi T / hbar.
Phase mass_form_phase(const ClosedFormInputs& in, Time t, const PhysicalConstants& k = kCodata2018);
/// -eta kappa g T^2 (eta = 1 gives the standard gravimeter formula).
Phase closed_form_mz_phase(Wavenumber kappa, GravAccel g, Time t, double eta = 1.0);
/// -2 pi g T^2 / lambda_dB.
Phase de_broglie_form_mz_phase(GravAccel g, Time t, Length lambda_db);
/// -m_g g l T / hbar for two parallel path sections a height l apart.
Phase parallel_section_phase(Mass m_g, GravAccel g, Length l, Time t, const PhysicalConstants& k = kCodata2018);

// ---------------------------------------------------------------------------
// Equivalence chain

inline constexpr double kEquivalenceTolerance = 1e-9;

struct EquivalenceReport {
    std::map<std::string, double> values;      // closed forms by name, plus "numeric"
    std::map<std::string, double> deviations;  // "a|b" -> relative deviation
    double eta = 1.0;
    double tolerance = kEquivalenceTolerance;
    double max_deviation = 0.0;
    bool passed = false;
    std::string failure;  // first failing pair, empty on success
};

// Canonical pi/2-pi-pi/2 experiment. species.eta carries m_g / m_i.
struct MzScenario {
    AtomSpecies species;
    GravityEnvironment env;
    Wavenumber kappa;
    Time t;
    std::array<Phase, 3> optical_phases{};
    Length x0{0.0};
    Velocity v0{0.0};
    std::size_t n_steps = kDefaultSimpsonSteps;
    ArmOptions arm_options{};

    PulseSequence sequence() const { return PulseSequence::mach_zehnder(kappa, t, optical_phases); }
    MachZehnderArms arms(const PhysicalConstants& k = kCodata2018) const;
    /// Builds the arms and integrates every channel with the species' hyperfine energies.
    PhaseBreakdown run(const PhysicalConstants& k = kCodata2018) const;
};

/// |a - b| / max(|a|, |b|), zero when both are zero.
double relative_deviation(double a, double b) noexcept;

/// Integrates the canonical Mach-Zehnder numerically and compares it with every closed form.
/// Mismatches are reported in the result, not thrown.
EquivalenceReport verify_equivalence_chain(const MzScenario& scenario,
                                           double tolerance = kEquivalenceTolerance,
                                           const PhysicalConstants& k = kCodata2018);

} // namespace gravphase
