// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "srstap/dictionary.hpp"

#include <cstddef>

namespace srstap {

/// Settings for  min ||alpha||_1  s.t.  ||x - Psi alpha||_2 <= epsilon.
struct BpdnConfig {
    double epsilon = 8.0;         // residual allowance, same units as x
    std::size_t max_iters = 20000;
    double tol = 1e-4;            // relative duality gap / feasibility slack
    double rho = 1.0;             // initial ADMM penalty multiplier
    std::size_t check_every = 10; // iterations between certificate checks

    void validate() const;
};

/// epsilon = sqrt(NM) * sigma, the expected norm of the noise vector.
BpdnConfig noise_matched_config(const RadarParams& p);

struct SparseSpectrum {
    CVector coeffs;  // one entry per grid cell

    [[nodiscard]] RVector power() const { return coeffs.cwiseAbs2(); }
    [[nodiscard]] double l1_norm() const { return coeffs.cwiseAbs().sum(); }
};

struct BpdnResult {
    SparseSpectrum spectrum;
    std::size_t iterations = 0;
    double residual_norm = 0.0;  // ||x - Psi alpha||_2
    double objective = 0.0;      // ||alpha||_1
    double dual_bound = 0.0;     // certified lower bound on the optimum
};

/// Raised when ADMM exhausts max_iters; carries the last iterate.
class BpdnNotConverged : public NumericalError {
public:
    BpdnNotConverged(SparseSpectrum last, double residual, double gap, std::size_t iterations);

    [[nodiscard]] const SparseSpectrum& last_iterate() const { return last_; }
    [[nodiscard]] double residual_norm() const { return residual_; }
    [[nodiscard]] double relative_gap() const { return gap_; }
    [[nodiscard]] std::size_t iterations() const { return iterations_; }

private:
    SparseSpectrum last_;
    double residual_;
    double gap_;
    std::size_t iterations_;
};

/// Complex basis pursuit denoising by ADMM.
///
/// Splits alpha = beta (l1 prox: complex soft threshold, phase kept) and
/// Psi alpha = z (projection onto the epsilon ball around x). The alpha
/// step solves (I + Psi^H Psi) alpha = q through the NM x NM system
/// (I + Psi Psi^H), factored once per call. The iteration stops when the
/// iterate is feasible to epsilon * (1 + tol) and its relative duality
/// gap against the best dual candidate is <= tol.
BpdnResult solve_bpdn(const Dictionary& d, const CVector& x, const BpdnConfig& cfg);

struct KktCertificate {
    double residual_norm = 0.0;
    double feasibility_gap = 0.0;    // max(0, ||r|| - epsilon)
    double dual_scale = 0.0;         // lambda-hat
    double max_correlation = 0.0;    // ||lambda-hat Psi^H r||_inf
    double support_modulus_dev = 0.0;  // max over support of ||g_i| - 1|
    double support_phase_dev = 0.0;    // max over support of 1 - Re(g_i conj(sgn alpha_i))
    std::size_t support_size = 0;
    double primal_objective = 0.0;
    double dual_objective = 0.0;
    double relative_gap = 0.0;
    bool passed = false;
};

/// Optimality audit for any candidate alpha. The dual point is r / ||Psi^H r||_inf
/// with r = x - Psi alpha; the support is { i : |alpha_i| >= tol * ||alpha||_inf }.
KktCertificate check_kkt(const Dictionary& d, const CVector& x, const BpdnConfig& cfg, const CVector& alpha);

}  // namespace srstap
