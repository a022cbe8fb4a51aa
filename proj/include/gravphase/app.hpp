#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gravphase/gravimeter.hpp"
#include "gravphase/gravity.hpp"
#include "gravphase/interferometer.hpp"
#include "gravphase/phase.hpp"
#include "gravphase/species.hpp"

namespace gravphase::app {

inline constexpr const char* kArtifactVersion = "0.1.0";

struct ScanConfig {
    ScanVariable variable = ScanVariable::laser_phase;
    std::vector<double> values;
};

struct FringeConfig {
    std::optional<double> v1;       // default 0
    std::optional<double> v2;       // default v1 + recoil velocity
    std::optional<double> window;   // default 10 expected fringes
    std::size_t samples = 4001;
};

struct ClockConfig {
    std::vector<std::pair<double, double>> pairs;  // (x1, x2)
    double duration = 1.0;
    std::optional<double> nu_hz;                   // default: species hyperfine frequency
};

struct InvertConfig {
    std::optional<double> delta_phase;
    std::vector<FringeSample> scan;
    std::optional<double> g_reference;
    bool free_contrast = false;
    std::optional<MonteCarloOptions> monte_carlo;
    MonteCarloOptions ladder;  // used for the default synthetic noiseless inversion
};

// Fully resolved scenario. Every optional field that is empty was absent from the config.
struct ScenarioConfig {
    AtomSpecies species;
    GravityEnvironment env;
    std::optional<double> kappa;
    std::optional<double> t;
    std::array<double, 3> laser_phases{};
    bool pi_pulse_swap = true;
    double x0 = 0.0;
    double v0 = 0.0;
    std::size_t n_steps = kDefaultSimpsonSteps;
    std::uint64_t seed = 1;
    std::optional<ScanConfig> scan;
    FringeConfig fringes;
    std::optional<ClockConfig> clock;
    InvertConfig invert;
    std::vector<double> eta_grid;
    std::optional<double> sensitivity_nu_hz;
    std::optional<double> trajectory_dt;

    /// The interferometer scenario; throws config error naming the missing field.
    MzScenario mz() const;
};

/// Parses the JSON scenario text. Errors are config errors naming the offending field.
ScenarioConfig parse_scenario(const std::string& json_text);
ScenarioConfig load_scenario(const std::string& path);

/// Canonical JSON (sorted keys, all defaults resolved) that re-parses to an equal config.
std::string echo_scenario(const ScenarioConfig& config);

struct OutputFile {
    std::string name;
    std::string content;
};

struct CommandResult {
    int exit_code = 0;              // 0 success, 3 numerical/verification failure
    std::vector<OutputFile> files;  // first entry is the primary output
    std::string summary;            // one human-readable line
};

struct RunOptions {
    std::optional<std::string> timestamp;  // added to provenance when set
};

const std::vector<std::string>& command_names();

/// Runs one CLI command. Throws Error on config or numerical failure.
CommandResult run_command(const std::string& command, const ScenarioConfig& config, const RunOptions& options = {});

/// Exit code for an error: 2 for config/input problems, 3 for numerical failures.
int exit_code_for(Errc code) noexcept;

} // namespace gravphase::app
