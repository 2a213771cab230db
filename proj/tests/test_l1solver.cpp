// SPDX-License-Identifier: Apache-2.0
#include "srstap/l1solver.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

namespace srstap {
namespace {

struct SmallInstance {
    RadarParams params;
    GridSpec grid;
    CVector x;
    double eps;
};

// NM <= 16 and at most 64 grid cells.
SmallInstance make_instance(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const std::size_t shapes[][4] = {{4, 4, 2, 2}, {2, 8, 4, 1}, {8, 2, 1, 4}, {3, 5, 2, 2}, {4, 3, 2, 2}, {2, 2, 4, 4}};
    const auto& sh = shapes[seed % 6];
    RadarParams p;
    p.n_sensors = sh[0];
    p.n_pulses = sh[1];
    GridSpec g = build_grid(p, sh[2], sh[3]);
    const Dictionary d(p, g);

    std::uniform_int_distribution<std::size_t> cell(0, g.cells() - 1);
    CVector alpha = CVector::Zero(static_cast<Eigen::Index>(g.cells()));
    for (int k = 0; k < 3; ++k) alpha[static_cast<Eigen::Index>(cell(rng))] = testing::random_cvector(rng, 1, 3.0)[0];
    CVector x = d.apply(alpha) + testing::random_cvector(rng, static_cast<Eigen::Index>(p.dof()), 0.3);
    std::uniform_real_distribution<double> frac(0.05, 0.5);
    return {p, g, x, frac(rng) * x.norm()};
}

TEST(Bpdn, MatchesInteriorPointOracle) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto inst = make_instance(seed);
        const Dictionary d(inst.params, inst.grid);
        BpdnConfig cfg;
        cfg.epsilon = inst.eps;
        cfg.tol = 1e-6;
        cfg.max_iters = 200000;
        const auto res = solve_bpdn(d, inst.x, cfg);
        const auto ref = testing::barrier_bpdn(d.psi(), inst.x, inst.eps);
        EXPECT_NEAR(res.objective, ref.objective, 1e-3 * ref.objective) << "seed " << seed;
        EXPECT_LE(res.residual_norm, inst.eps * (1.0 + 1e-6) + 1e-9) << "seed " << seed;
        BpdnConfig audit;
        audit.epsilon = inst.eps;
        const auto kkt = check_kkt(d, inst.x, audit, res.spectrum.coeffs);
        EXPECT_TRUE(kkt.passed) << "seed " << seed << " gap " << kkt.relative_gap << " corr " << kkt.max_correlation;
    }
}

TEST(Bpdn, ZeroWhenDataInsideBall) {
    RadarParams p;
    const Dictionary d(p, build_grid(p, 2, 2));
    std::mt19937_64 rng(3);
    const CVector x = testing::random_cvector(rng, 64, 0.5);
    BpdnConfig cfg;
    cfg.epsilon = x.norm() * 1.01;
    const auto res = solve_bpdn(d, x, cfg);
    EXPECT_EQ(res.spectrum.coeffs.cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ(res.iterations, 0u);
}

TEST(Bpdn, RecoversOnGridAtom) {
    RadarParams p;
    const GridSpec g = build_grid(p, 4, 4);
    const Dictionary d(p, g);
    CVector alpha = CVector::Zero(static_cast<Eigen::Index>(g.cells()));
    alpha[g.column_index(70, 20)] = Complex(10.0, -5.0);
    BpdnConfig cfg;
    cfg.epsilon = 1e-3;
    const auto res = solve_bpdn(d, d.apply(alpha), cfg);
    Eigen::Index peak = 0;
    res.spectrum.coeffs.cwiseAbs().maxCoeff(&peak);
    EXPECT_EQ(static_cast<std::size_t>(peak), g.column_index(70, 20));
    EXPECT_LE(res.residual_norm, cfg.epsilon * (1.0 + cfg.tol) + 1e-9);
}

TEST(Bpdn, NotConvergedCarriesIterate) {
    RadarParams p;
    const Dictionary d(p, build_grid(p, 4, 4));
    std::mt19937_64 rng(5);
    BpdnConfig cfg = noise_matched_config(p);
    cfg.max_iters = 3;
    cfg.check_every = 1;
    const CVector x = testing::random_cvector(rng, 64, 20.0);
    try {
        (void)solve_bpdn(d, x, cfg);
        FAIL() << "expected BpdnNotConverged";
    } catch (const BpdnNotConverged& e) {
        EXPECT_EQ(e.iterations(), 3u);
        EXPECT_EQ(e.last_iterate().coeffs.size(), d.cols());
        EXPECT_GT(e.residual_norm(), 0.0);
    }
}

TEST(Bpdn, ConfigValidation) {
    BpdnConfig cfg;
    EXPECT_NO_THROW(cfg.validate());
    cfg.epsilon = -1.0;
    EXPECT_THROW(cfg.validate(), ConfigError);
    cfg = BpdnConfig{};
    cfg.tol = 0.0;
    EXPECT_THROW(cfg.validate(), ConfigError);
    cfg = BpdnConfig{};
    cfg.max_iters = 0;
    EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(Bpdn, NoiseMatchedEpsilon) {
    RadarParams p;
    EXPECT_DOUBLE_EQ(noise_matched_config(p).epsilon, 8.0);
    p.noise_power = 4.0;
    EXPECT_DOUBLE_EQ(noise_matched_config(p).epsilon, 16.0);
}

TEST(Bpdn, DimensionMismatch) {
    RadarParams p;
    const Dictionary d(p, build_grid(p, 1, 1));
    EXPECT_THROW(solve_bpdn(d, CVector::Ones(10), BpdnConfig{}), DataError);
}

TEST(Kkt, RejectsSuboptimalPoint) {
    RadarParams p;
    p.n_sensors = 4;
    p.n_pulses = 4;
    const Dictionary d(p, build_grid(p, 2, 2));
    std::mt19937_64 rng(9);
    const CVector x = testing::random_cvector(rng, 16, 2.0);
    BpdnConfig cfg;
    cfg.epsilon = 0.3 * x.norm();
    cfg.tol = 1e-6;
    const auto res = solve_bpdn(d, x, cfg);
    CVector worse = d.psi().completeOrthogonalDecomposition().solve(x);
    const auto bad = check_kkt(d, x, cfg, worse);
    EXPECT_FALSE(bad.passed);
    EXPECT_GT(bad.primal_objective, res.objective);
}

}  // namespace
}  // namespace srstap
