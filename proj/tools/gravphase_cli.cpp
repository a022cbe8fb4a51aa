#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gravphase/gravphase.h"

namespace {

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

int fail(gp_status status) {
    std::cerr << "gravphase: error (" << gp_status_name(status) << "): " << gp_last_error_message() << "\n";
    return gp_exit_code(status);
}

bool write_file(const std::filesystem::path& path, const char* data, std::size_t size) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(data, static_cast<std::streamsize>(size));
    return static_cast<bool>(out);
}

} // namespace

int main(int argc, char** argv) {
    std::vector<std::string> commands;
    for (std::size_t i = 0; i < gp_command_count(); ++i) {
        commands.emplace_back(gp_command_name(i));
    }

    CLI::App cli{"Gravitational phase-shift simulator for atom interferometers and clocks", "gravphase"};
    cli.set_version_flag("--version", std::string(gp_version()) + " (constants " + gp_constants_version() + ")");
    std::string command;
    std::string config;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    bool stamp = false;
    bool quiet = false;
    cli.add_option("command", command, "Command to run")->required()->check(CLI::IsMember(commands));
    cli.add_option("-c,--config", config, "Scenario JSON file")->required();
    cli.add_option("-o,--out", out_dir, "Output directory")->capture_default_str();
    cli.add_option("--seed", seed, "Override run.seed");
    cli.add_flag("--stamp", stamp, "Record a UTC timestamp in the provenance block");
    cli.add_flag("-q,--quiet", quiet, "Do not print the summary line");

    try {
        cli.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = cli.exit(e);
        return rc == 0 ? 0 : 2;
    }

    gp_scenario* scenario = nullptr;
    if (gp_status st = gp_scenario_load(config.c_str(), &scenario); st != GP_OK) {
        return fail(st);
    }
    if (seed) {
        gp_scenario_set_seed(scenario, *seed);
    }
    const std::string ts = stamp ? utc_timestamp() : std::string();
    gp_result* result = nullptr;
    const gp_status st = gp_run(scenario, command.c_str(), stamp ? ts.c_str() : nullptr, &result);
    gp_scenario_free(scenario);
    if (st != GP_OK) {
        return fail(st);
    }

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        std::cerr << "gravphase: error (io): cannot create output directory '" << out_dir << "': " << ec.message() << "\n";
        gp_result_free(result);
        return 2;
    }
    for (std::size_t i = 0; i < gp_result_file_count(result); ++i) {
        std::size_t size = 0;
        const char* data = gp_result_file_content(result, i, &size);
        const std::filesystem::path path = std::filesystem::path(out_dir) / gp_result_file_name(result, i);
        if (!write_file(path, data, size)) {
            std::cerr << "gravphase: error (io): cannot write '" << path.string() << "'\n";
            gp_result_free(result);
            return 2;
        }
    }
    if (!quiet) {
        std::cout << command << ": " << gp_result_summary(result) << "\n";
    }
    const int rc = gp_result_exit_code(result);
    gp_result_free(result);
    return rc;
}
