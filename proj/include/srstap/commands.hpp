// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "srstap/config.hpp"
#include "srstap/snapshot_io.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace srstap {

struct CommandOptions {
    std::string config_path;  // empty -> built-in defaults
    std::string input_path;
    std::string output_path;  // empty -> stdout for CSV commands
    std::optional<std::uint64_t> seed;
    std::size_t threads = 1;
};

/// Loads the config (or defaults) and applies the --seed override.
ExperimentConfig resolve_config(const CommandOptions& opts);

/// Simulated snapshots for the config, with the target injected if requested.
SnapshotSet simulate_for(const ExperimentConfig& cfg);
/// Writes the snapshot file and `<path>.json` with the scenario echo.
void run_simulate(const ExperimentConfig& cfg, const std::string& output_path);
std::string sidecar_json(const ExperimentConfig& cfg, const SnapshotSet& xs);

std::string spectrum_csv(const ExperimentConfig& cfg, const SnapshotFile& input, std::size_t threads = 1);
std::string convergence_csv(const ExperimentConfig& cfg, std::size_t threads = 1);
std::string sweep_csv(const ExperimentConfig& cfg, std::size_t threads = 1);
std::string rangescan_csv(const ExperimentConfig& cfg, const SnapshotFile& input, std::size_t threads = 1);

/// Runs a subcommand by name, writing results where `opts` says.
void run_command(const std::string& command, const CommandOptions& opts);

/// 0 ok, 2 ConfigError, 3 DataError, 4 NumericalError.
int exit_code_for(const std::exception& e);

}  // namespace srstap
