// SPDX-License-Identifier: Apache-2.0
#include "srstap/jointsr.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

namespace srstap {
namespace {

SparseSpectrum spectrum_of(std::initializer_list<Complex> v) {
    SparseSpectrum s;
    s.coeffs = CVector(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (auto z : v) s.coeffs[i++] = z;
    return s;
}

TEST(Support, TopMagnitudesLowerIndexOnTies) {
    const auto a = spectrum_of({1.0, Complex(0, 3.0), 2.0, -3.0, 0.5});
    EXPECT_EQ(extract_support(a, 2).indices, (std::vector<std::size_t>{1, 3}));
    const auto b = spectrum_of({1.0, 1.0, 1.0, 1.0});
    EXPECT_EQ(extract_support(b, 2).indices, (std::vector<std::size_t>{0, 1}));
    EXPECT_THROW(extract_support(b, 0), std::invalid_argument);
    EXPECT_THROW(extract_support(b, 5), std::invalid_argument);
}

TEST(Support, VotingCountsThenMagnitudeThenIndex) {
    const std::vector<SupportSet> sup{{{0, 2}}, {{2, 3}}, {{1, 3}}};
    std::vector<RVector> mags(3, RVector::Zero(5));
    mags[0] << 1, 0, 5, 0, 0;
    mags[1] << 0, 0, 5, 4, 0;
    mags[2] << 0, 9, 0, 4, 0;
    // votes: 2 -> 2, 3 -> 2; 0 and 1 one vote each, 1 has more magnitude
    EXPECT_EQ(vote_supports(sup, 3, mags).indices, (std::vector<std::size_t>{1, 2, 3}));
    const std::vector<SupportSet> tie{{{4}}, {{1}}};
    EXPECT_EQ(vote_supports(tie, 1, {}).indices, (std::vector<std::size_t>{1}));
    // short supports are filled from the unvoted cells
    EXPECT_EQ(vote_supports(tie, 3, std::vector<RVector>(2, RVector::Zero(5))).indices,
              (std::vector<std::size_t>{0, 1, 4}));
}

TEST(Refit, ExactOnNoiseFreeData) {
    const RadarParams p;
    const Dictionary d(p, build_grid(p, 4, 4));
    std::mt19937_64 rng(1);
    const std::vector<std::size_t> cells{100, 300, 701};
    const CMatrix coeffs = CMatrix::Random(3, 5);
    SnapshotSet xs{d.columns(cells) * coeffs, 0, ""};
    const auto fit = ls_refit(d, xs, SupportSet{cells});
    EXPECT_LT((fit.coeffs - coeffs).norm(), 1e-9);
    EXPECT_LT(fit.residual.norm(), 1e-9);
    EXPECT_EQ(fit.ridge, 0.0);
    EXPECT_FALSE(fit.underdetermined);
}

TEST(Refit, RidgeWhenSupportExceedsRows) {
    RadarParams p;
    p.n_sensors = 2;
    p.n_pulses = 2;
    const Dictionary d(p, build_grid(p, 4, 4));
    std::mt19937_64 rng(3);
    SnapshotSet xs{CMatrix(4, 2), 0, ""};
    xs.data.col(0) = testing::random_cvector(rng, 4);
    xs.data.col(1) = testing::random_cvector(rng, 4);
    const auto fit = ls_refit(d, xs, SupportSet{{0, 3, 7, 12, 30, 41}});
    EXPECT_TRUE(fit.underdetermined);
    EXPECT_GT(fit.condition, kRidgeConditionLimit);
    EXPECT_GT(fit.ridge, 0.0);
    EXPECT_TRUE(fit.coeffs.allFinite());
    EXPECT_LT(fit.residual.norm(), 1e-3 * xs.data.norm());
}

// Every pair of cells by brute force; returns the best residual.
double best_pair_residual(const Dictionary& d, const SnapshotSet& xs) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < static_cast<std::size_t>(d.cols()); ++i) {
        for (std::size_t j = i + 1; j < static_cast<std::size_t>(d.cols()); ++j) {
            const CMatrix a = d.columns({i, j});
            const CMatrix g = a.adjoint() * a;
            const CMatrix c = g.inverse() * (a.adjoint() * xs.data);
            best = std::min(best, (xs.data - a * c).norm());
        }
    }
    return best;
}

TEST(JointRecovery, TwoSparseMatchesBruteForce) {
    RadarParams p;
    p.n_sensors = 4;
    p.n_pulses = 4;
    const Dictionary d(p, build_grid(p, 2, 2));
    std::mt19937_64 rng(17);
    const std::vector<std::size_t> cells{9, 40};
    CMatrix coeffs(2, 4);
    for (Eigen::Index k = 0; k < 4; ++k) coeffs.col(k) = testing::random_cvector(rng, 2, 5.0);
    SnapshotSet xs{d.columns(cells) * coeffs, 0, ""};
    for (Eigen::Index k = 0; k < 4; ++k) xs.data.col(k) += testing::random_cvector(rng, 16, 0.05);

    BpdnConfig cfg;
    cfg.epsilon = 0.05 * 4.0;
    const auto spectra = solve_columns(d, xs, cfg);
    const auto jr = joint_recover(d, xs, spectra, 2);
    EXPECT_EQ(jr.support.indices, cells);
    const auto fit = ls_refit(d, xs, jr.support);
    EXPECT_NEAR(fit.residual.norm(), best_pair_residual(d, xs), 1e-9);
    for (std::size_t j = 0; j < 2; ++j) {
        const double want = coeffs.row(static_cast<Eigen::Index>(j)).squaredNorm() / 4.0;
        EXPECT_NEAR(jr.spectrum.power[static_cast<Eigen::Index>(cells[j])], want, 0.05 * want);
    }
    EXPECT_EQ((jr.spectrum.power.array() > 0.0).count(), 2);
}

TEST(JointRecovery, SimpleAverageIsMeanOfPowers) {
    const auto a = spectrum_of({1.0, Complex(0, 2.0)});
    const auto b = spectrum_of({3.0, 0.0});
    const std::vector<SparseSpectrum> v{a, b};
    const auto avg = average_power(v);
    EXPECT_DOUBLE_EQ(avg.power[0], 5.0);
    EXPECT_DOUBLE_EQ(avg.power[1], 2.0);
    EXPECT_EQ(avg.n_snapshots, 2u);
}

TEST(JointRecovery, RejectsMismatchedInputs) {
    const RadarParams p;
    const Dictionary d(p, build_grid(p, 1, 1));
    SnapshotSet xs{CMatrix::Zero(64, 2), 0, ""};
    std::vector<SparseSpectrum> one(1, SparseSpectrum{CVector::Zero(64)});
    EXPECT_THROW(joint_recover(d, xs, one, 2), std::invalid_argument);
}

TEST(SolveColumns, ThreadCountDoesNotChangeResults) {
    const auto sc = default_scenario();
    const Dictionary d(sc.params, build_grid(sc.params, 4, 4));
    const auto xs = simulate_snapshots(sc, 4, 3);
    const auto cfg = noise_matched_config(sc.params);
    const auto a = solve_columns(d, xs, cfg, 1);
    const auto b = solve_columns(d, xs, cfg, 3);
    for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(a[k].coeffs, b[k].coeffs);
}

TEST(SolveColumns, FailureNamesColumn) {
    const auto sc = default_scenario();
    const Dictionary d(sc.params, build_grid(sc.params, 2, 2));
    const auto xs = simulate_snapshots(sc, 2, 3);
    BpdnConfig cfg = noise_matched_config(sc.params);
    cfg.max_iters = 2;
    cfg.check_every = 1;
    try {
        (void)solve_columns(d, xs, cfg);
        FAIL() << "expected SnapshotSolveError";
    } catch (const SnapshotSolveError& e) {
        EXPECT_LT(e.column(), 2u);
        EXPECT_NE(std::string(e.what()).find("snapshot"), std::string::npos);
    }
}

}  // namespace
}  // namespace srstap
