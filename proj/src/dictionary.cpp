// SPDX-License-Identifier: Apache-2.0
#include "srstap/dictionary.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace srstap {

GridSpec build_grid(const RadarParams& p, std::size_t rho_s, std::size_t rho_d) {
    if (rho_s < 1 || rho_d < 1) throw ConfigError("grid: resolution scales must be >= 1");
    p.validate();

    GridSpec g;
    g.rho_s = rho_s;
    g.rho_d = rho_d;
    g.n_angle = rho_s * p.n_sensors;
    g.n_doppler = rho_d * p.n_pulses;
    g.angle_nodes.reserve(g.n_angle);
    g.doppler_nodes.reserve(g.n_doppler);

    for (std::size_t a = 0; a < g.n_angle; ++a) {
        const double s = -1.0 + 2.0 * static_cast<double>(a) / static_cast<double>(g.n_angle);
        g.angle_nodes.push_back(std::asin(s) * 180.0 / kPi);
    }
    for (std::size_t d = 0; d < g.n_doppler; ++d) {
        const double f = -0.5 + static_cast<double>(d) / static_cast<double>(g.n_doppler);
        g.doppler_nodes.push_back(f * p.prf());
    }
    return g;
}

Dictionary::Dictionary(const RadarParams& p, GridSpec grid) : params_(p), grid_(std::move(grid)) {
    const auto n_s = static_cast<Eigen::Index>(grid_.n_angle);
    const auto n_d = static_cast<Eigen::Index>(grid_.n_doppler);
    if (grid_.angle_nodes.size() != grid_.n_angle || grid_.doppler_nodes.size() != grid_.n_doppler)
        throw ConfigError("dictionary: grid node lists do not match grid sizes");
    if (grid_.n_angle != grid_.rho_s * p.n_sensors || grid_.n_doppler != grid_.rho_d * p.n_pulses)
        throw ConfigError("dictionary: grid does not match radar dimensions");

    spatial_.resize(static_cast<Eigen::Index>(p.n_sensors), n_s);
    temporal_.resize(static_cast<Eigen::Index>(p.n_pulses), n_d);
    for (Eigen::Index a = 0; a < n_s; ++a) spatial_.col(a) = spatial_phase(p, grid_.angle_nodes[static_cast<std::size_t>(a)]);
    for (Eigen::Index d = 0; d < n_d; ++d) temporal_.col(d) = temporal_phase(p, grid_.doppler_nodes[static_cast<std::size_t>(d)]);

    psi_.resize(static_cast<Eigen::Index>(p.dof()), n_s * n_d);
    for (Eigen::Index d = 0; d < n_d; ++d) {
        for (Eigen::Index a = 0; a < n_s; ++a) {
            psi_.col(d * n_s + a) = steering_vector(p, grid_.angle_nodes[static_cast<std::size_t>(a)],
                                                    grid_.doppler_nodes[static_cast<std::size_t>(d)])
                                        .values;
        }
    }

    frame_ = psi_ * psi_.adjoint();
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(frame_, Eigen::EigenvaluesOnly);
    spectral_norm_ = std::sqrt(std::max(0.0, eig.eigenvalues().maxCoeff()));
}

CVector Dictionary::apply(const CVector& alpha) const {
    const Eigen::Map<const CMatrix> coeffs(alpha.data(), spatial_.cols(), temporal_.cols());
    const CMatrix y = spatial_ * (coeffs * temporal_.transpose());
    return Eigen::Map<const CVector>(y.data(), y.size());
}

CVector Dictionary::apply_adjoint(const CVector& y) const {
    const Eigen::Map<const CMatrix> ymat(y.data(), spatial_.rows(), temporal_.rows());
    const CMatrix c = (spatial_.adjoint() * ymat) * temporal_.conjugate();
    return Eigen::Map<const CVector>(c.data(), c.size());
}

CMatrix Dictionary::columns(const std::vector<std::size_t>& idx) const {
    CMatrix out(psi_.rows(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t j = 0; j < idx.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = psi_.col(static_cast<Eigen::Index>(idx[j]));
    return out;
}

Dictionary build_dictionary(const RadarParams& p, const GridSpec& g) { return Dictionary(p, g); }

namespace {

// ceil that ignores floating noise just above an integer
std::size_t cell_ceil(double x) {
    if (!(x > 0.0)) return 0;
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(x - 1e-9)));
}

}  // namespace

SparsityEstimate estimate_sparsity(const RadarParams& p, double azimuth_min, double azimuth_max, const GridSpec& g) {
    if (azimuth_min > azimuth_max) throw ConfigError("sparsity: azimuth_min must not exceed azimuth_max");
    SparsityEstimate est;
    if (azimuth_min == azimuth_max) return est;

    const double width = azimuth_max - azimuth_min;
    est.angle_cells = cell_ceil(width / 180.0 * static_cast<double>(g.rho_s * p.n_sensors));

    const double spread = std::sin(to_radians(azimuth_max + p.crab_angle)) - std::sin(to_radians(azimuth_min + p.crab_angle));
    const double norm_doppler = 2.0 * p.velocity * std::abs(spread) / (p.wavelength * p.prf());
    est.doppler_cells = cell_ceil(norm_doppler * static_cast<double>(g.rho_d * p.n_pulses));

    const double dm = static_cast<double>(est.doppler_cells);
    const double dn = static_cast<double>(est.angle_cells);
    est.sparsity = std::max<std::size_t>(1, cell_ceil(std::sqrt(dm * dm + dn * dn)));
    return est;
}

}  // namespace srstap
