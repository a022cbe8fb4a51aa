#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gravphase/interferometer.hpp"
#include "gravphase/phase.hpp"

namespace gravphase {

struct GravimeterEstimate {
    double g_hat = 0.0;
    double residual = 0.0;        // rad; last phase step for fits, 0 for closed-form inversion
    int iterations = 0;
    double wrapped_phase = 0.0;   // fitted phase in (-pi, pi]
    std::int64_t fringe_index = 0;
    double phase = 0.0;           // wrapped_phase + 2 pi fringe_index
    double contrast = 1.0;
    double rms_population_residual = 0.0;
};

/// g = -dPhi / (eta kappa T^2). Throws unidentifiable when eta kappa T^2 == 0.
GravimeterEstimate invert_g(Phase delta_phase, Wavenumber kappa, Time t, double eta = 1.0);

struct FringeSample {
    double laser_phase;   // phi_L of the final pulse, rad
    double excited;       // measured P_e
};

struct FitOptions {
    bool free_contrast = false;
    int max_iterations = 100;
    double step_tolerance = 1e-10;
    // Picks the fringe index nearest to the phase this g would produce; index 0 when absent.
    std::optional<double> g_reference;
};

/// Gauss-Newton fit of P_e = (1 - C cos(dPhi + phi_L)) / 2 for dPhi, then inversion to g.
GravimeterEstimate fit_fringe_scan(const std::vector<FringeSample>& scan, Wavenumber kappa, Time t,
                                   double eta = 1.0, const FitOptions& options = {});

/// Phase in (-pi, pi].
double wrap_phase(double phase) noexcept;

struct LadderRung {
    Time t;
    double wrapped_phase;
};

/// Resolves the fringe index rung by rung, shortest T first. The first rung must satisfy
/// |eta kappa g T^2| < pi; every later rung takes its index from the previous estimate.
GravimeterEstimate resolve_fringe_index_ladder(std::vector<LadderRung> rungs, Wavenumber kappa, double eta = 1.0);

/// sigma / (eta kappa T^2 sqrt(sum_i sin^2(dPhi + phi_i) / 4)): linearized std of the fitted g.
double linearized_g_sigma(double delta_phase, const std::vector<double>& laser_phases, double sigma,
                          Wavenumber kappa, Time t, double eta = 1.0);

struct MonteCarloOptions {
    std::size_t trials = 100;
    double sigma = 1e-3;
    std::size_t points = 32;                 // laser-phase samples per scan over [0, 2 pi)
    std::vector<double> ladder_fractions{1e-3, 1e-2, 1e-1, 1.0};  // rung T as a fraction of scenario T
    std::uint64_t seed = 1;
};

struct MonteCarloTrial {
    std::size_t trial;
    double g_hat;
    double error;
};

struct MonteCarloSummary {
    std::vector<MonteCarloTrial> trials;
    double g_true = 0.0;
    double mean_error = 0.0;
    double rms_error = 0.0;
    double predicted_sigma = 0.0;
    double ratio = 0.0;  // rms_error / predicted_sigma
};

/// Noisy fringe scans from the phase engine, fitted and ladder-resolved, one RNG stream per trial.
MonteCarloSummary monte_carlo_gravimeter(const MzScenario& scenario, const MonteCarloOptions& options,
                                         const PhysicalConstants& k = kCodata2018);

/// Noiseless synthetic scans (same ladder) fitted and resolved without any prior on g.
GravimeterEstimate noiseless_ladder_estimate(const MzScenario& scenario, const MonteCarloOptions& options,
                                             const PhysicalConstants& k = kCodata2018);

struct SensitivityReport {
    double matter_coupling = 0.0;   // m_i, kg
    double optical_coupling = 0.0;  // h nu / c^2, kg
    double ratio = 0.0;
};

SensitivityReport sensitivity_ratio(const AtomSpecies& species, FrequencyHz optical_nu,
                                    const PhysicalConstants& k = kCodata2018);

struct EpSweepPoint {
    double eta;
    double phase;
};

struct EpSweep {
    std::vector<EpSweepPoint> points;
    std::optional<double> slope;   // least-squares d(phase)/d(eta); absent for fewer than 2 distinct eta
    double expected_slope = 0.0;   // -kappa g T^2
    double slope_deviation = 0.0;
    bool passed = true;
};

EpSweep ep_sweep(const MzScenario& scenario, const std::vector<double>& eta_grid,
                 double tolerance = kEquivalenceTolerance, const PhysicalConstants& k = kCodata2018);

} // namespace gravphase
