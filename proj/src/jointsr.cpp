// SPDX-License-Identifier: Apache-2.0
#include "srstap/jointsr.hpp"

#include "srstap/parallel.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <limits>
#include <numeric>

namespace srstap {

bool SupportSet::contains(std::size_t i) const { return std::binary_search(indices.begin(), indices.end(), i); }

SnapshotSolveError::SnapshotSolveError(std::size_t column, const std::string& what)
    : NumericalError("snapshot " + std::to_string(column) + ": " + what), column_(column) {}

std::vector<SparseSpectrum> solve_columns(const Dictionary& d, const SnapshotSet& xs, const BpdnConfig& cfg,
                                          std::size_t threads) {
    std::vector<SparseSpectrum> out(xs.count());
    parallel_for(xs.count(), threads, [&](std::size_t k) {
        try {
            out[k] = solve_bpdn(d, xs.data.col(static_cast<Eigen::Index>(k)), cfg).spectrum;
        } catch (const BpdnNotConverged& e) {
            throw SnapshotSolveError(k, e.what());
        }
    });
    return out;
}

PowerSpectrum average_power(std::span<const SparseSpectrum> spectra) {
    if (spectra.empty()) throw std::invalid_argument("average_power: no spectra");
    PowerSpectrum p{RVector::Zero(spectra.front().coeffs.size()), spectra.size()};
    for (const auto& s : spectra) p.power += s.power();
    p.power /= static_cast<double>(spectra.size());
    return p;
}

PowerSpectrum simple_average(const Dictionary& d, const SnapshotSet& xs, const BpdnConfig& cfg) {
    if (xs.count() == 0) throw std::invalid_argument("simple_average: need at least one snapshot");
    const auto spectra = solve_columns(d, xs, cfg);
    return average_power(spectra);
}

SupportSet extract_support(const SparseSpectrum& alpha, std::size_t s) {
    const auto n = static_cast<std::size_t>(alpha.coeffs.size());
    if (s < 1 || s > n) throw std::invalid_argument("extract_support: s must lie in [1, number of cells]");
    const RVector mag = alpha.coeffs.cwiseAbs();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    auto before = [&](std::size_t a, std::size_t b) {
        const auto ma = mag[static_cast<Eigen::Index>(a)];
        const auto mb = mag[static_cast<Eigen::Index>(b)];
        return ma != mb ? ma > mb : a < b;
    };
    std::nth_element(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(s - 1), idx.end(), before);
    idx.resize(s);
    std::sort(idx.begin(), idx.end());
    return SupportSet{std::move(idx)};
}

SupportSet vote_supports(std::span<const SupportSet> supports, std::size_t s, std::span<const RVector> magnitudes) {
    if (supports.empty()) throw std::invalid_argument("vote_supports: no supports");
    if (!magnitudes.empty() && magnitudes.size() != supports.size())
        throw std::invalid_argument("vote_supports: one magnitude vector per support required");

    Eigen::Index n = 0;
    for (const auto& m : magnitudes) n = std::max(n, m.size());
    for (const auto& sup : supports)
        if (!sup.indices.empty()) n = std::max(n, static_cast<Eigen::Index>(sup.indices.back() + 1));
    if (s > static_cast<std::size_t>(n)) throw std::invalid_argument("vote_supports: s exceeds number of cells");

    std::vector<std::size_t> votes(static_cast<std::size_t>(n), 0);
    for (const auto& sup : supports)
        for (std::size_t i : sup.indices) ++votes[i];
    RVector summed = RVector::Zero(n);
    for (const auto& m : magnitudes) summed.head(m.size()) += m;

    std::vector<std::size_t> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), 0);
    auto before = [&](std::size_t a, std::size_t b) {
        if (votes[a] != votes[b]) return votes[a] > votes[b];
        const double ma = summed[static_cast<Eigen::Index>(a)];
        const double mb = summed[static_cast<Eigen::Index>(b)];
        if (ma != mb) return ma > mb;
        return a < b;
    };
    std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(s), idx.end(), before);
    idx.resize(s);
    std::sort(idx.begin(), idx.end());
    return SupportSet{std::move(idx)};
}

LsRefit ls_refit(const Dictionary& d, const SnapshotSet& xs, const SupportSet& gamma) {
    if (xs.dof() != static_cast<std::size_t>(d.rows())) throw DataError("ls_refit: snapshot length does not match dictionary");
    LsRefit fit;
    const auto s = static_cast<Eigen::Index>(gamma.size());
    if (s == 0) {
        fit.coeffs = CMatrix(0, xs.data.cols());
        fit.residual = xs.data;
        return fit;
    }
    fit.underdetermined = gamma.size() > xs.dof();

    const CMatrix cols = d.columns(gamma.indices);
    const CMatrix g = cols.adjoint() * cols;
    const Eigen::SelfAdjointEigenSolver<CMatrix> eig(g, Eigen::EigenvaluesOnly);
    const double lo = eig.eigenvalues().minCoeff();
    const double hi = eig.eigenvalues().maxCoeff();
    fit.condition = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();

    if (fit.condition > kRidgeConditionLimit) {
        fit.ridge = 1e-8 * g.trace().real() / static_cast<double>(s);
        // ridge solve as an augmented least-squares problem
        CMatrix aug(cols.rows() + s, s);
        aug << cols, std::sqrt(fit.ridge) * CMatrix::Identity(s, s);
        CMatrix rhs = CMatrix::Zero(cols.rows() + s, xs.data.cols());
        rhs.topRows(cols.rows()) = xs.data;
        fit.coeffs = aug.colPivHouseholderQr().solve(rhs);
    } else {
        fit.coeffs = cols.colPivHouseholderQr().solve(xs.data);
    }
    fit.residual = xs.data - cols * fit.coeffs;
    return fit;
}

namespace {

// Relative magnitude below which a BPDN coefficient counts as zero.
constexpr double kNegligible = 1e-9;

SupportSet nonzero_support(const SparseSpectrum& alpha, std::size_t s) {
    SupportSet top = extract_support(alpha, s);
    const double peak = alpha.coeffs.cwiseAbs().maxCoeff();
    std::erase_if(top.indices, [&](std::size_t i) {
        return !(std::abs(alpha.coeffs[static_cast<Eigen::Index>(i)]) > kNegligible * peak);
    });
    return top;
}

}  // namespace

JointRecovery joint_recover(const Dictionary& d, const SnapshotSet& xs, std::span<const SparseSpectrum> spectra,
                            std::size_t s) {
    if (xs.count() == 0) throw std::invalid_argument("joint_recover: need at least one snapshot");
    if (spectra.size() != xs.count()) throw std::invalid_argument("joint_recover: one spectrum per snapshot required");
    if (s < 1) throw std::invalid_argument("joint_recover: sparsity must be >= 1");
    s = std::min(s, static_cast<std::size_t>(d.cols()));

    JointRecovery out;
    std::vector<RVector> magnitudes;
    out.snapshot_supports.reserve(spectra.size());
    magnitudes.reserve(spectra.size());
    for (const auto& sp : spectra) {
        out.snapshot_supports.push_back(nonzero_support(sp, s));
        magnitudes.push_back(sp.coeffs.cwiseAbs());
    }
    out.support = vote_supports(out.snapshot_supports, s, magnitudes);

    const LsRefit fit = ls_refit(d, xs, out.support);
    out.condition = fit.condition;
    out.spectrum.power = RVector::Zero(d.cols());
    out.spectrum.n_snapshots = xs.count();
    const double inv_l = 1.0 / static_cast<double>(xs.count());
    for (std::size_t j = 0; j < out.support.size(); ++j) {
        out.spectrum.power[static_cast<Eigen::Index>(out.support.indices[j])] =
            fit.coeffs.row(static_cast<Eigen::Index>(j)).squaredNorm() * inv_l;
    }
    return out;
}

PowerSpectrum joint_recover(const Dictionary& d, const SnapshotSet& xs, std::size_t s, const BpdnConfig& cfg) {
    const auto spectra = solve_columns(d, xs, cfg);
    return joint_recover(d, xs, spectra, s).spectrum;
}

}  // namespace srstap
