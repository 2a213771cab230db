// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "srstap/types.hpp"

#include <string_view>

namespace srstap {

enum class Estimator { GroundTruth, Smi, Lsmi, AssumedPrior, ColoredLoading, SparseRecovery, Identity };

std::string_view estimator_name(Estimator e);

/// Hermitian PSD NM x NM matrix plus the recipe that produced it.
struct CovarianceEstimate {
    CMatrix matrix;
    Estimator tag = Estimator::Smi;
    double beta_l = 0.0;  // diagonal loading
    double beta_d = 0.0;  // colored loading

    [[nodiscard]] Eigen::Index dim() const { return matrix.rows(); }

    /// Hermitian to 1e-12 relative and min eigenvalue >= -1e-10 tr/NM.
    [[nodiscard]] bool satisfies_invariants() const;
};

}  // namespace srstap
