// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "srstap/estimators.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace srstap {

enum class Method {
    Optimal,         // ground-truth covariance, the IF_Loss reference
    Lsmi,
    ColoredLoading,
    SrJoint,         // sparse recovery, joint support + LS refit
    SrAverage,       // sparse recovery, simple per-snapshot average
    NonAdaptive,     // w = s
};

std::string_view method_name(Method m);
/// Accepts the names returned by method_name. Throws ConfigError otherwise.
Method parse_method(std::string_view name);

/// Knobs shared by every covariance estimator.
struct MethodSettings {
    double beta_l = 1.0;  // diagonal loading; defaults to the noise floor
    double beta_d = 1.0;  // colored loading
    bool prior_cnr_scaling = true;   // scale R_c to the prior CNR
    double prior_cnr_db = 35.0;      // used only with prior_cnr_scaling
    std::optional<std::size_t> sparsity;  // overrides the prior-based estimate
    BpdnConfig solver;
    std::size_t rho_s = 4;
    std::size_t rho_d = 4;
};

MethodSettings default_settings(const ClutterScenario& truth);

/// (|w^H s|^2 / w^H R w) / (s^H s / tr R), in dB.
double improvement_factor(const FilterWeights& w, const CovarianceEstimate& r_true, const SteeringVector& s);

/// |w^H s|^2 / (w^H R w * s^H R^-1 s), in dB. Never above 0 dB.
double if_loss(const FilterWeights& w, const CovarianceEstimate& r_true, const SteeringVector& s);

struct IfLossCurve {
    Method method = Method::Lsmi;
    std::vector<std::size_t> snapshot_counts;
    std::vector<double> mean_ifloss_db;  // linear-domain mean, then dB
    std::vector<std::size_t> failures;   // trials excluded per point
    std::size_t trials = 0;
};

/// Smallest snapshot count whose mean IF_Loss is >= -3 dB; nullopt if none.
std::optional<std::size_t> convergence_rate(const IfLossCurve& curve);

struct ConvergenceSetup {
    ClutterScenario truth;
    PriorKnowledge prior;
    TargetSpec target;
    MethodSettings settings;
    std::vector<Method> methods;
    std::vector<std::size_t> snapshot_counts;
    std::size_t trials = 100;
    std::uint64_t seed = 1;
    std::size_t threads = 1;
};

/// Monte Carlo IF_Loss curves, one per method. Every method sees the same
/// snapshots in a trial, and curve points for different L share the
/// leading columns. Solver failures exclude the trial from that point.
std::vector<IfLossCurve> run_convergence(const ConvergenceSetup& setup);

enum class SweepParameter { Velocity, Width, Crab };

std::string_view sweep_parameter_name(SweepParameter p);
SweepParameter parse_sweep_parameter(std::string_view name);

/// Prior obtained by replacing one quantity of `base` with `value`. Width
/// keeps the sector centre and sets its extent.
PriorKnowledge mismatched_prior(const PriorKnowledge& base, SweepParameter p, double value);

struct SweepResult {
    SweepParameter parameter = SweepParameter::Velocity;
    std::vector<double> values;
    std::vector<Method> methods;
    std::vector<std::vector<double>> mean_ifloss_db;  // [method][value]
    std::vector<std::vector<std::size_t>> failures;   // [method][value]
    std::size_t snapshots = 3;
    std::size_t trials = 0;
};

struct SweepSetup {
    ConvergenceSetup base;  // snapshot_counts is ignored
    SweepParameter parameter = SweepParameter::Velocity;
    std::vector<double> values;
    std::size_t snapshots = 3;
};

/// IF_Loss at a fixed snapshot count while the assumed prior (R_c and the
/// sparsity estimate) is rebuilt for each value. Data always follow the truth.
SweepResult run_mismatch_sweep(const SweepSetup& setup);

struct RangeScanSetup {
    std::size_t training = 12;
    std::size_t guards = 4;
    Method method = Method::SrJoint;
    std::size_t threads = 1;
};

struct RangeProfile {
    std::vector<double> power;     // |w^H x|^2
    std::vector<double> power_db;  // relative to the peak cell
};

/// Sliding-window adaptive filtering over range cells. For each test cell the
/// `guards` nearest cells are skipped and the next `training` nearest cells
/// train the estimator.
RangeProfile range_scan(const SnapshotSet& cells, const RadarParams& p, const PriorKnowledge& prior,
                        const MethodSettings& settings, const SteeringVector& target, const RangeScanSetup& scan);

/// Training cells used for `test_cell` (exposed for tests).
std::vector<std::size_t> training_cells(std::size_t n_cells, std::size_t test_cell, std::size_t training,
                                        std::size_t guards);

/// Output at `target_cell` minus the strongest other cell, in dB.
double clutter_margin_db(const RangeProfile& profile, std::size_t target_cell);

}  // namespace srstap
