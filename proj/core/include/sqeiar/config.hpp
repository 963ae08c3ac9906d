#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "sqeiar/control.hpp"
#include "sqeiar/grid.hpp"
#include "sqeiar/model.hpp"

namespace sqeiar {

enum class RunMode { kBaseline, kOptimal, kBoth };

RunMode parse_run_mode(std::string_view text);
std::string_view to_string(RunMode mode);

/// A fully resolved scenario. Defaults reproduce the COVID-19 scenario:
/// ModelParams defaults, one region covering (0, 1), nx = 101, dt = 0.01 day,
/// tau = 30 days.
struct ScenarioConfig {
    ModelParams params;
    CostWeights weights;
    QuarantineRegions regions;
    Grid grid;
    /// Profile names per compartment: paper_s0, paper_e0, paper_a0, paper_i0,
    /// zero, const:<value> or file:<path> (one value per line, nx lines).
    std::array<std::string, kCompartments> initial{"paper_s0", "zero", "paper_e0", "paper_a0", "paper_i0", "zero"};
    SweepOptions sweep;
    RunMode mode = RunMode::kBoth;
    std::uint64_t seed = 42;
    std::filesystem::path output_dir = "out";
    std::size_t output_stride = 100;
    /// Relative file: profiles are resolved against this directory.
    std::filesystem::path base_dir = ".";

    /// Throws ConfigError describing the first invalid setting.
    void validate() const;
};

/// Parses `section.key = value` lines ('#' starts a comment) on top of the
/// defaults. A bare key is accepted when it names exactly one setting.
/// Throws ConfigError on unknown keys, malformed values or invalid settings.
ScenarioConfig parse_config(std::string_view text, const std::filesystem::path& base_dir = ".");

/// Reads and parses a configuration file; a missing file is a ConfigError.
ScenarioConfig load_config(const std::filesystem::path& path);

/// Renders every setting in the format parse_config accepts.
std::string format_config(const ScenarioConfig& config);

/// Evaluates one named profile on the grid nodes.
std::vector<double> make_profile(std::string_view spec, const Grid& grid, const std::filesystem::path& base_dir = ".");

InitialState make_initial_state(const ScenarioConfig& config);

Problem make_problem(const ScenarioConfig& config);

}  // namespace sqeiar
