// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "srstap/covariance.hpp"
#include "srstap/dictionary.hpp"
#include "srstap/jointsr.hpp"
#include "srstap/scenario.hpp"

namespace srstap {

/// What the processor believes about the clutter before seeing data.
struct PriorKnowledge {
    RadarParams params;         // assumed velocity, crab angle, ...
    double azimuth_min = 30.0;  // degrees
    double azimuth_max = 50.0;  // degrees
    std::size_t n_scatters = 200;
};

/// Prior that matches the scenario exactly.
PriorKnowledge matched_prior(const ClutterScenario& sc);

struct FilterWeights {
    CVector w;
    SteeringVector target;
};

/// Sample covariance (1/L) sum x x^H.
CovarianceEstimate smi(const SnapshotSet& xs);

/// smi + beta_l I.
CovarianceEstimate lsmi(const SnapshotSet& xs, double beta_l);

/// Knowledge-based clutter covariance: unit-power scatterers spread
/// uniformly in sin(theta) over the assumed sector, on the assumed ridge.
/// No noise term.
CovarianceEstimate assumed_ccm(const PriorKnowledge& prior);

/// smi + beta_d R_c + beta_l I. An empty `xs` is allowed and drops the SMI term.
CovarianceEstimate colored_loading(const SnapshotSet& xs, const CovarianceEstimate& r_c, double beta_d, double beta_l);

/// sum over cells with positive power of power_i phi_i phi_i^H, plus beta_l I.
CovarianceEstimate sr_ccm(const PowerSpectrum& spec, const Dictionary& d, double beta_l);

/// Hermitian factorizations are rejected above this condition estimate.
inline constexpr double kMaxCondition = 1e14;

/// w = R^-1 s (mu = 1) by Cholesky. Throws NumericalError if R is not
/// positive definite or its condition estimate exceeds kMaxCondition.
FilterWeights filter_weights(const CovarianceEstimate& r, const SteeringVector& s);

/// Minimum-variance spectrum 1 / (phi_i^H R^-1 phi_i) over the grid.
PowerSpectrum capon_spectrum(const CovarianceEstimate& r, const Dictionary& d);

}  // namespace srstap
