// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "srstap/model.hpp"

#include <vector>

namespace srstap {

/// Angle-Doppler discretization: N_s = rho_s * N angle nodes uniform in
/// sin(theta) over [-1, 1), N_d = rho_d * M Doppler nodes uniform in f_d/PRF
/// over [-0.5, 0.5).
struct GridSpec {
    std::size_t rho_s = 4;
    std::size_t rho_d = 4;
    std::size_t n_angle = 0;
    std::size_t n_doppler = 0;
    std::vector<double> angle_nodes;    // degrees
    std::vector<double> doppler_nodes;  // Hz

    [[nodiscard]] std::size_t cells() const { return n_angle * n_doppler; }
    [[nodiscard]] std::size_t column_index(std::size_t a, std::size_t d) const { return d * n_angle + a; }
    [[nodiscard]] std::size_t angle_of(std::size_t col) const { return col % n_angle; }
    [[nodiscard]] std::size_t doppler_of(std::size_t col) const { return col / n_angle; }
};

GridSpec build_grid(const RadarParams& p, std::size_t rho_s, std::size_t rho_d);

/// Overcomplete space-time basis. Columns are ordered angle-fastest.
///
/// Every column is temporal (x) spatial, so Psi = T (x) A with A the N x N_s
/// spatial factor and T the M x N_d temporal factor. `apply` and
/// `apply_adjoint` use that factorization; `psi` keeps the dense matrix for
/// column extraction and reference checks.
class Dictionary {
public:
    Dictionary(const RadarParams& p, GridSpec grid);

    [[nodiscard]] const CMatrix& psi() const { return psi_; }
    [[nodiscard]] const GridSpec& grid() const { return grid_; }
    [[nodiscard]] const RadarParams& params() const { return params_; }
    [[nodiscard]] Eigen::Index rows() const { return psi_.rows(); }
    [[nodiscard]] Eigen::Index cols() const { return psi_.cols(); }

    /// Psi * alpha.
    [[nodiscard]] CVector apply(const CVector& alpha) const;
    /// Psi^H * y.
    [[nodiscard]] CVector apply_adjoint(const CVector& y) const;

    /// Psi * Psi^H (NM x NM), cached at construction.
    [[nodiscard]] const CMatrix& frame_operator() const { return frame_; }
    /// Largest singular value of Psi.
    [[nodiscard]] double spectral_norm() const { return spectral_norm_; }

    [[nodiscard]] CMatrix columns(const std::vector<std::size_t>& idx) const;

private:
    RadarParams params_;
    GridSpec grid_;
    CMatrix spatial_;   // N x N_s
    CMatrix temporal_;  // M x N_d
    CMatrix psi_;
    CMatrix frame_;
    double spectral_norm_ = 0.0;
};

Dictionary build_dictionary(const RadarParams& p, const GridSpec& g);

struct SparsityEstimate {
    std::size_t angle_cells = 0;    // Delta N
    std::size_t doppler_cells = 0;  // Delta M
    std::size_t sparsity = 1;       // s-hat
};

/// Number of grid cells an assumed clutter ridge over [min, max] occupies.
/// The crab angle in `p` shifts the Doppler spread.
SparsityEstimate estimate_sparsity(const RadarParams& p, double azimuth_min, double azimuth_max, const GridSpec& g);

}  // namespace srstap
