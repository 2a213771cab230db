// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "srstap/harness.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace srstap {

enum class SpectrumMethod { Capon, SrSingle, SrAverage, SrJoint };

std::string_view spectrum_method_name(SpectrumMethod m);
SpectrumMethod parse_spectrum_method(std::string_view name);

/// Everything a batch run needs, fully resolved. Defaults are the
/// reference scenario (8x8 array, 20 deg clutter sector, 35 dB CNR) with a matched prior.
struct ExperimentConfig {
    ClutterScenario scenario;
    TargetSpec target;
    double target_snr_db = 0.0;  // per element, relative to the noise power
    PriorKnowledge prior;
    MethodSettings settings;
    bool epsilon_from_noise = true;  // epsilon = sqrt(NM) * sigma
    bool beta_l_from_noise = true;   // beta_l = sigma^2

    std::vector<Method> methods{Method::Optimal, Method::Lsmi, Method::ColoredLoading, Method::SrJoint};
    std::vector<std::size_t> snapshot_counts;  // defaults to 1..16
    std::size_t trials = 100;
    std::uint64_t seed = 1;

    std::size_t simulate_snapshots = 40;
    std::optional<std::size_t> simulate_target_cell;
    bool simulate_sensor_major = false;

    std::vector<SpectrumMethod> spectrum_methods{SpectrumMethod::Capon, SpectrumMethod::SrSingle,
                                                 SpectrumMethod::SrAverage, SpectrumMethod::SrJoint};
    std::size_t spectrum_column = 0;

    SweepParameter sweep_parameter = SweepParameter::Velocity;
    std::vector<double> sweep_values;
    std::size_t sweep_snapshots = 3;

    std::size_t range_training = 12;
    std::size_t range_guards = 4;
    std::vector<Method> range_methods{Method::SrJoint, Method::Lsmi};
    std::optional<std::size_t> range_target_cell;

    /// Amplitude giving target_snr_db per element.
    [[nodiscard]] TargetSpec scaled_target() const;
    /// Cross-module preconditions. Throws ConfigError.
    void validate() const;
};

/// Parses the TOML subset used by config files: [section] headers,
/// key = value with numbers, "strings", true/false and one-line arrays,
/// and # comments. Unknown sections or keys and duplicates are errors.
/// Messages carry "<source>:<line>:".
ExperimentConfig parse_config(std::string_view text, const std::string& source = "<config>");
ExperimentConfig load_config(const std::string& path);

/// Canonical text of the resolved configuration. Re-parses to the same config.
std::string dump_config(const ExperimentConfig& cfg);

/// 64-bit FNV-1a of dump_config, as 16 hex digits.
std::string config_hash(const ExperimentConfig& cfg);

}  // namespace srstap
