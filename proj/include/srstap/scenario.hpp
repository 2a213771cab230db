// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "srstap/covariance.hpp"
#include "srstap/model.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace srstap {

/// Stationary ground clutter confined to an azimuth sector.
///
/// Scatterers are spread uniformly in sin(theta) across the sector and sit
/// exactly on the clutter ridge. Unless `scatter_powers` is given, the total
/// clutter power per element is CNR * noise_power, split evenly.
struct ClutterScenario {
    RadarParams params;
    double azimuth_min = 30.0;  // degrees
    double azimuth_max = 50.0;  // degrees
    std::size_t n_scatters = 200;
    double cnr_db = 35.0;
    std::vector<double> scatter_powers;  // empty -> uniform

    void validate() const;
};

ClutterScenario default_scenario();

struct ScatterPoint {
    double angle_deg;
    double doppler_hz;
    double power;  // E{|gamma|^2}
};

/// Scatterer layout used by both the simulator and the ground-truth CCM.
std::vector<ScatterPoint> place_scatters(const ClutterScenario& sc);

/// NM x L training data. Column k came from RNG stream (seed, k).
struct SnapshotSet {
    CMatrix data;
    std::uint64_t seed = 0;
    std::string tag;

    [[nodiscard]] std::size_t count() const { return static_cast<std::size_t>(data.cols()); }
    [[nodiscard]] std::size_t dof() const { return static_cast<std::size_t>(data.rows()); }
    [[nodiscard]] SnapshotSet prefix(std::size_t n) const;
};

struct TargetSpec {
    double azimuth = 10.0;          // degrees
    double radial_velocity = 45.0;  // m/s
    Complex amplitude{1.0, 0.0};
};

TargetSpec default_target();

/// Derives an independent 64-bit seed from a parent seed and a counter.
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t counter);

/// Draws L IID clutter-plus-noise snapshots. Deterministic given `seed`;
/// any column prefix is reproducible on its own.
SnapshotSet simulate_snapshots(const ClutterScenario& sc, std::size_t n_snapshots, std::uint64_t seed);

/// R = sum_i E{|gamma_i|^2} phi_i phi_i^H + noise_power * I.
CovarianceEstimate ground_truth_ccm(const ClutterScenario& sc);

/// Adds amplitude * steering(target) to column `cell`.
[[nodiscard]] SnapshotSet inject_target(SnapshotSet xs, const RadarParams& p, const TargetSpec& t, std::size_t cell);

}  // namespace srstap
