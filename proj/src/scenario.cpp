// SPDX-License-Identifier: Apache-2.0
#include "srstap/scenario.hpp"

#include <cmath>
#include <random>

namespace srstap {

void ClutterScenario::validate() const {
    params.validate();
    if (!(azimuth_min <= azimuth_max)) throw ConfigError("scenario: azimuth_min must not exceed azimuth_max");
    if (!scatter_powers.empty() && scatter_powers.size() != n_scatters)
        throw ConfigError("scenario: scatter_powers length must equal n_scatters");
    for (double w : scatter_powers)
        if (!(w >= 0.0)) throw ConfigError("scenario: scatter powers must be >= 0");
}

ClutterScenario default_scenario() { return ClutterScenario{}; }

TargetSpec default_target() { return TargetSpec{}; }

std::vector<ScatterPoint> place_scatters(const ClutterScenario& sc) {
    std::vector<ScatterPoint> out;
    out.reserve(sc.n_scatters);
    if (sc.n_scatters == 0) return out;

    const double s_lo = std::sin(to_radians(sc.azimuth_min));
    const double s_hi = std::sin(to_radians(sc.azimuth_max));
    const double uniform_power =
        from_db10(sc.cnr_db) * sc.params.noise_power / static_cast<double>(sc.n_scatters);

    for (std::size_t i = 0; i < sc.n_scatters; ++i) {
        const double frac = sc.n_scatters == 1 ? 0.5 : static_cast<double>(i) / static_cast<double>(sc.n_scatters - 1);
        const double angle = std::asin(s_lo + frac * (s_hi - s_lo)) * 180.0 / kPi;
        const double power = sc.scatter_powers.empty() ? uniform_power : sc.scatter_powers[i];
        out.push_back({angle, clutter_doppler(sc.params, angle), power});
    }
    return out;
}

SnapshotSet SnapshotSet::prefix(std::size_t n) const {
    if (n > count()) throw std::out_of_range("SnapshotSet::prefix beyond available columns");
    return SnapshotSet{data.leftCols(static_cast<Eigen::Index>(n)), seed, tag};
}

std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t counter) {
    // splitmix64 finalizer over a Weyl-stepped state
    std::uint64_t z = parent + 0x9E3779B97F4A7C15ULL * (counter + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

namespace {

CMatrix scatter_basis(const RadarParams& p, const std::vector<ScatterPoint>& pts) {
    CMatrix phi(static_cast<Eigen::Index>(p.dof()), static_cast<Eigen::Index>(pts.size()));
    for (std::size_t i = 0; i < pts.size(); ++i)
        phi.col(static_cast<Eigen::Index>(i)) = steering_vector(p, pts[i].angle_deg, pts[i].doppler_hz).values;
    return phi;
}

}  // namespace

SnapshotSet simulate_snapshots(const ClutterScenario& sc, std::size_t n_snapshots, std::uint64_t seed) {
    if (n_snapshots == 0) throw std::invalid_argument("simulate_snapshots: need at least one snapshot");
    sc.validate();

    const auto pts = place_scatters(sc);
    const CMatrix phi = scatter_basis(sc.params, pts);
    const Eigen::Index dof = static_cast<Eigen::Index>(sc.params.dof());
    const double noise_sd = std::sqrt(sc.params.noise_power / 2.0);

    SnapshotSet xs{CMatrix(dof, static_cast<Eigen::Index>(n_snapshots)), seed, "simulated"};
    for (std::size_t k = 0; k < n_snapshots; ++k) {
        const std::uint64_t col_seed = derive_seed(seed, k);
        std::seed_seq seq{static_cast<std::uint32_t>(col_seed), static_cast<std::uint32_t>(col_seed >> 32)};
        std::mt19937_64 rng(seq);
        std::normal_distribution<double> unit(0.0, 1.0);

        CVector gamma(static_cast<Eigen::Index>(pts.size()));
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const double sd = std::sqrt(pts[i].power / 2.0);
            const double re = unit(rng);
            const double im = unit(rng);
            gamma[static_cast<Eigen::Index>(i)] = Complex(sd * re, sd * im);
        }
        CVector x = pts.empty() ? CVector(CVector::Zero(dof)) : CVector(phi * gamma);
        for (Eigen::Index r = 0; r < dof; ++r) {
            const double re = unit(rng);
            const double im = unit(rng);
            x[r] += Complex(noise_sd * re, noise_sd * im);
        }
        xs.data.col(static_cast<Eigen::Index>(k)) = x;
    }
    return xs;
}

CovarianceEstimate ground_truth_ccm(const ClutterScenario& sc) {
    sc.validate();
    const auto pts = place_scatters(sc);
    const Eigen::Index dof = static_cast<Eigen::Index>(sc.params.dof());
    CMatrix r = sc.params.noise_power * CMatrix::Identity(dof, dof);
    if (!pts.empty()) {
        CMatrix phi = scatter_basis(sc.params, pts);
        for (std::size_t i = 0; i < pts.size(); ++i) phi.col(static_cast<Eigen::Index>(i)) *= std::sqrt(pts[i].power);
        r += phi * phi.adjoint();
    }
    r = 0.5 * (r + r.adjoint()).eval();
    return CovarianceEstimate{std::move(r), Estimator::GroundTruth, sc.params.noise_power, 0.0};
}

SnapshotSet inject_target(SnapshotSet xs, const RadarParams& p, const TargetSpec& t, std::size_t cell) {
    if (cell >= xs.count()) throw std::out_of_range("inject_target: cell index beyond snapshot count");
    if (xs.dof() != p.dof()) throw DataError("inject_target: snapshot length does not match N*M");
    const auto sv = steering_vector(p, t.azimuth, target_doppler(p, t.radial_velocity));
    xs.data.col(static_cast<Eigen::Index>(cell)) += t.amplitude * sv.values;
    return xs;
}

}  // namespace srstap
