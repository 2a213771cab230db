// SPDX-License-Identifier: Apache-2.0
#include "srstap/estimators.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace srstap {

std::string_view estimator_name(Estimator e) {
    switch (e) {
        case Estimator::GroundTruth: return "ground-truth";
        case Estimator::Smi: return "smi";
        case Estimator::Lsmi: return "lsmi";
        case Estimator::AssumedPrior: return "assumed-prior";
        case Estimator::ColoredLoading: return "colored-loading";
        case Estimator::SparseRecovery: return "sparse-recovery";
        case Estimator::Identity: return "identity";
    }
    return "unknown";
}

bool CovarianceEstimate::satisfies_invariants() const {
    if (matrix.rows() != matrix.cols() || matrix.rows() == 0) return false;
    const double scale = std::max(matrix.norm(), 1e-300);
    if ((matrix - matrix.adjoint()).norm() > 1e-12 * scale) return false;
    const Eigen::SelfAdjointEigenSolver<CMatrix> eig(matrix, Eigen::EigenvaluesOnly);
    const double tr = matrix.trace().real();
    return eig.eigenvalues().minCoeff() >= -1e-10 * std::abs(tr) / static_cast<double>(matrix.rows());
}

PriorKnowledge matched_prior(const ClutterScenario& sc) {
    return PriorKnowledge{sc.params, sc.azimuth_min, sc.azimuth_max, sc.n_scatters};
}

namespace {

void hermitize(CMatrix& m) { m = (0.5 * (m + m.adjoint())).eval(); }

}  // namespace

CovarianceEstimate smi(const SnapshotSet& xs) {
    if (xs.count() == 0) throw std::invalid_argument("smi: need at least one snapshot");
    CMatrix r = xs.data * xs.data.adjoint() / static_cast<double>(xs.count());
    hermitize(r);
    return CovarianceEstimate{std::move(r), Estimator::Smi, 0.0, 0.0};
}

CovarianceEstimate lsmi(const SnapshotSet& xs, double beta_l) {
    if (beta_l < 0.0) throw std::invalid_argument("lsmi: loading must be >= 0");
    CovarianceEstimate r = smi(xs);
    r.matrix.diagonal().array() += beta_l;
    r.tag = Estimator::Lsmi;
    r.beta_l = beta_l;
    return r;
}

CovarianceEstimate assumed_ccm(const PriorKnowledge& prior) {
    ClutterScenario assumed;
    assumed.params = prior.params;
    assumed.azimuth_min = prior.azimuth_min;
    assumed.azimuth_max = prior.azimuth_max;
    assumed.n_scatters = prior.n_scatters;
    assumed.scatter_powers.assign(prior.n_scatters, 1.0);
    assumed.validate();

    const auto pts = place_scatters(assumed);
    CMatrix phi(static_cast<Eigen::Index>(prior.params.dof()), static_cast<Eigen::Index>(pts.size()));
    for (std::size_t i = 0; i < pts.size(); ++i)
        phi.col(static_cast<Eigen::Index>(i)) = steering_vector(prior.params, pts[i].angle_deg, pts[i].doppler_hz).values;
    CMatrix r = phi * phi.adjoint();
    hermitize(r);
    return CovarianceEstimate{std::move(r), Estimator::AssumedPrior, 0.0, 0.0};
}

CovarianceEstimate colored_loading(const SnapshotSet& xs, const CovarianceEstimate& r_c, double beta_d, double beta_l) {
    if (beta_d < 0.0 || beta_l < 0.0) throw std::invalid_argument("colored_loading: loadings must be >= 0");
    CMatrix r = beta_d * r_c.matrix;
    if (xs.count() > 0) {
        if (xs.dof() != static_cast<std::size_t>(r_c.dim())) throw DataError("colored_loading: dimension mismatch");
        r += smi(xs).matrix;
    }
    r.diagonal().array() += beta_l;
    return CovarianceEstimate{std::move(r), Estimator::ColoredLoading, beta_l, beta_d};
}

CovarianceEstimate sr_ccm(const PowerSpectrum& spec, const Dictionary& d, double beta_l) {
    if (spec.power.size() != d.cols()) throw DataError("sr_ccm: spectrum does not match dictionary grid");
    std::vector<std::size_t> cells;
    for (Eigen::Index i = 0; i < spec.power.size(); ++i)
        if (spec.power[i] > 0.0) cells.push_back(static_cast<std::size_t>(i));

    CMatrix r = CMatrix::Zero(d.rows(), d.rows());
    if (!cells.empty()) {
        CMatrix cols = d.columns(cells);
        for (std::size_t j = 0; j < cells.size(); ++j)
            cols.col(static_cast<Eigen::Index>(j)) *= std::sqrt(spec.power[static_cast<Eigen::Index>(cells[j])]);
        r = cols * cols.adjoint();
        hermitize(r);
    }
    r.diagonal().array() += beta_l;
    return CovarianceEstimate{std::move(r), Estimator::SparseRecovery, beta_l, 0.0};
}

namespace {

// Cholesky with a reciprocal-condition estimate from the factor's diagonal
// (squared ratio of extreme pivots, a lower bound on the 2-norm condition).
Eigen::LLT<CMatrix> checked_cholesky(const CovarianceEstimate& r, const char* who) {
    Eigen::LLT<CMatrix> llt(r.matrix);
    if (llt.info() != Eigen::Success)
        throw NumericalError(std::string(who) + ": covariance is not positive definite; add diagonal loading");
    const RVector piv = llt.matrixL().toDenseMatrix().diagonal().real();
    const double ratio = piv.maxCoeff() / piv.minCoeff();
    if (!(ratio * ratio <= kMaxCondition))
        throw NumericalError(std::string(who) + ": covariance is ill-conditioned; add diagonal loading");
    return llt;
}

}  // namespace

FilterWeights filter_weights(const CovarianceEstimate& r, const SteeringVector& s) {
    if (r.dim() != s.values.size()) throw DataError("filter_weights: steering vector length mismatch");
    const auto llt = checked_cholesky(r, "filter_weights");
    return FilterWeights{llt.solve(s.values), s};
}

PowerSpectrum capon_spectrum(const CovarianceEstimate& r, const Dictionary& d) {
    if (r.dim() != d.rows()) throw DataError("capon_spectrum: covariance does not match dictionary");
    const auto llt = checked_cholesky(r, "capon_spectrum");
    // phi^H R^-1 phi = || L^-1 phi ||^2
    const CMatrix whitened = llt.matrixL().solve(d.psi());
    PowerSpectrum out{RVector(d.cols()), 0};
    for (Eigen::Index i = 0; i < d.cols(); ++i) out.power[i] = 1.0 / whitened.col(i).squaredNorm();
    return out;
}

}  // namespace srstap
