// SPDX-License-Identifier: Apache-2.0
#include "srstap/config.hpp"

#include <gtest/gtest.h>

namespace srstap {
namespace {

std::string error_of(const std::string& text) {
    try {
        (void)parse_config(text, "t.toml");
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

TEST(Config, DefaultsMirrorReferenceScenario) {
    const auto c = parse_config("");
    EXPECT_EQ(c.scenario.params.n_sensors, 8u);
    EXPECT_DOUBLE_EQ(c.scenario.params.velocity, 300.0);
    EXPECT_DOUBLE_EQ(c.scenario.azimuth_min, 30.0);
    EXPECT_DOUBLE_EQ(c.scenario.cnr_db, 35.0);
    EXPECT_EQ(c.settings.rho_s, 4u);
    EXPECT_DOUBLE_EQ(c.settings.beta_d, 1.0);
    EXPECT_DOUBLE_EQ(c.settings.beta_l, 1.0);
    EXPECT_DOUBLE_EQ(c.settings.solver.epsilon, 8.0);
    EXPECT_EQ(c.trials, 100u);
    EXPECT_EQ(c.snapshot_counts.size(), 16u);
    EXPECT_DOUBLE_EQ(c.prior.params.velocity, 300.0);
}

TEST(Config, ParsesSectionsAndTypes) {
    const auto c = parse_config(R"(
# comment
[radar]
velocity = 285.5   # trailing comment
noise_power = 2
[prior]
velocity = 270
[solver]
epsilon = 1e-4
[estimators]
beta_l = 0.5
prior_cnr_scaling = false
[experiment]
methods = ["lsmi", "cl"]
snapshot_counts = [1, 3, 5,]
seed = 18446744073709551615
[sweep]
parameter = "crab"
)");
    EXPECT_DOUBLE_EQ(c.scenario.params.velocity, 285.5);
    EXPECT_DOUBLE_EQ(c.prior.params.velocity, 270.0);
    EXPECT_DOUBLE_EQ(c.prior.params.noise_power, 2.0);
    EXPECT_DOUBLE_EQ(c.settings.solver.epsilon, 1e-4);
    EXPECT_FALSE(c.epsilon_from_noise);
    EXPECT_DOUBLE_EQ(c.settings.beta_l, 0.5);
    EXPECT_FALSE(c.settings.prior_cnr_scaling);
    EXPECT_EQ(c.methods, (std::vector<Method>{Method::Lsmi, Method::ColoredLoading}));
    EXPECT_EQ(c.snapshot_counts, (std::vector<std::size_t>{1, 3, 5}));
    EXPECT_EQ(c.seed, 18446744073709551615ULL);
    EXPECT_EQ(c.sweep_parameter, SweepParameter::Crab);
    EXPECT_FALSE(c.sweep_values.empty());
}

TEST(Config, NoiseEpsilonFollowsNoisePower) {
    const auto c = parse_config("[radar]\nnoise_power = 4\n[solver]\nepsilon = \"noise\"\n");
    EXPECT_DOUBLE_EQ(c.settings.solver.epsilon, 16.0);
    EXPECT_DOUBLE_EQ(c.settings.beta_l, 4.0);
}

TEST(Config, ErrorsCarryLineNumbers) {
    EXPECT_NE(error_of("[radar]\n\nbogus = 1\n").find("t.toml:3: unknown key 'bogus'"), std::string::npos);
    EXPECT_NE(error_of("[radar]\nvelocity = 1\nvelocity = 2\n").find("t.toml:3: duplicate key"), std::string::npos);
    EXPECT_NE(error_of("[nope]\nx = 1\n").find("t.toml:1: unknown section"), std::string::npos);
    EXPECT_NE(error_of("[radar]\nvelocity = fast\n").find("t.toml:2:"), std::string::npos);
    EXPECT_NE(error_of("[radar]\nn_sensors = 2.5\n").find("t.toml:2:"), std::string::npos);
    EXPECT_NE(error_of("[experiment]\nmethods = [\"smi\"]\n").find("t.toml:2:"), std::string::npos);
    EXPECT_NE(error_of("[experiment]\nmethods = [\"lsmi\"\n").find("t.toml:2:"), std::string::npos);
    EXPECT_NE(error_of("[target]\nazimuth = \"x\n").find("unterminated string"), std::string::npos);
    EXPECT_NE(error_of("[radar]\nvelocity\n").find("t.toml:2: expected '='"), std::string::npos);
}

TEST(Config, CrossModuleValidation) {
    EXPECT_NE(error_of("[scenario]\nazimuth_min = 60\n").find("azimuth_min"), std::string::npos);
    EXPECT_NE(error_of("[grid]\nrho_s = 0\n").find("rho"), std::string::npos);
    EXPECT_NE(error_of("[experiment]\ntrials = 0\n").find("trials"), std::string::npos);
    EXPECT_NE(error_of("[rangescan]\nmethods = [\"optimal\"]\n").find("optimal"), std::string::npos);
}

TEST(Config, DumpRoundTripsAndHashIsStable) {
    const auto a = parse_config("[radar]\nvelocity = 290\n[sweep]\nvalues = [1.5, 2]\n[simulate]\ntarget_cell = 3\n");
    const auto b = parse_config(dump_config(a));
    EXPECT_EQ(dump_config(a), dump_config(b));
    EXPECT_EQ(config_hash(a), config_hash(b));
    EXPECT_EQ(config_hash(a).size(), 16u);
    EXPECT_NE(config_hash(a), config_hash(parse_config("")));
}

TEST(Config, ScaledTargetAmplitude) {
    auto c = parse_config("[target]\nsnr_db = 20\n");
    EXPECT_NEAR(std::abs(c.scaled_target().amplitude), 10.0, 1e-12);
}

}  // namespace
}  // namespace srstap
