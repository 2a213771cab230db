// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "srstap/l1solver.hpp"
#include "srstap/scenario.hpp"

#include <span>
#include <vector>

namespace srstap {

/// Sorted grid-cell indices.
struct SupportSet {
    std::vector<std::size_t> indices;

    [[nodiscard]] std::size_t size() const { return indices.size(); }
    [[nodiscard]] bool contains(std::size_t i) const;
};

struct PowerSpectrum {
    RVector power;  // one non-negative entry per grid cell
    std::size_t n_snapshots = 0;
};

/// A per-column solve that failed; `column` is the snapshot index.
class SnapshotSolveError : public NumericalError {
public:
    SnapshotSolveError(std::size_t column, const std::string& what);
    [[nodiscard]] std::size_t column() const { return column_; }

private:
    std::size_t column_;
};

/// Independent BPDN solve of every column.
std::vector<SparseSpectrum> solve_columns(const Dictionary& d, const SnapshotSet& xs, const BpdnConfig& cfg,
                                          std::size_t threads = 1);

/// (1/L) sum_k |alpha_k|^2 cell by cell.
PowerSpectrum average_power(std::span<const SparseSpectrum> spectra);

PowerSpectrum simple_average(const Dictionary& d, const SnapshotSet& xs, const BpdnConfig& cfg);

/// Indices of the s largest |alpha_i|; equal magnitudes go to the lower index.
SupportSet extract_support(const SparseSpectrum& alpha, std::size_t s);

/// Occurrence vote across per-snapshot supports. Keeps the s most-voted
/// cells; ties at the cutoff go to the larger summed magnitude, then the
/// lower index. When fewer than s cells got any vote, the rest is filled by
/// summed magnitude.
SupportSet vote_supports(std::span<const SupportSet> supports, std::size_t s, std::span<const RVector> magnitudes);

struct LsRefit {
    CMatrix coeffs;          // s x L, rows follow the support order
    CMatrix residual;        // X - Psi_Gamma * coeffs
    double condition = 1.0;  // of Psi_Gamma^H Psi_Gamma
    double ridge = 0.0;      // lambda actually applied
    bool underdetermined = false;  // s > NM
};

/// Condition number above which the normal equations get a ridge term.
inline constexpr double kRidgeConditionLimit = 1e10;

/// Least-squares fit of every snapshot on the columns in `gamma`. A ridge of
/// 1e-8 * tr(G)/s is added only when cond(G) > kRidgeConditionLimit.
LsRefit ls_refit(const Dictionary& d, const SnapshotSet& xs, const SupportSet& gamma);

struct JointRecovery {
    PowerSpectrum spectrum;
    SupportSet support;
    std::vector<SupportSet> snapshot_supports;
    double condition = 1.0;
};

/// Decompose, vote, refit: per-snapshot supports from the given spectra
/// (numerically zero cells dropped), the joint support by vote, a
/// least-squares refit on it, and the per-cell mean power of the refit.
JointRecovery joint_recover(const Dictionary& d, const SnapshotSet& xs, std::span<const SparseSpectrum> spectra,
                            std::size_t s);

PowerSpectrum joint_recover(const Dictionary& d, const SnapshotSet& xs, std::size_t s, const BpdnConfig& cfg);

}  // namespace srstap
