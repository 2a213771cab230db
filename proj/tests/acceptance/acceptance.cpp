// SPDX-License-Identifier: Apache-2.0
// Acceptance run: prints one PASS/FAIL line per criterion, exits 1 if any fail.
#include "srstap/harness.hpp"
#include "test_support.hpp"

#include <cstdio>
#include <string>
#include <thread>

using namespace srstap;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& what) {
    std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", id, what.c_str());
    std::fflush(stdout);
    failures += ok ? 0 : 1;
}

std::string f2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

std::string rate_text(const std::optional<std::size_t>& r) { return r ? std::to_string(*r) : "inf"; }

bool in_band(const std::optional<std::size_t>& r, std::size_t lo, std::size_t hi) { return r && *r >= lo && *r <= hi; }

std::string curve_text(const IfLossCurve& c) {
    std::string s;
    for (std::size_t i = 0; i < c.snapshot_counts.size() && i < 8; ++i) s += (i ? " " : "") + f2(c.mean_ifloss_db[i]);
    return s;
}

std::size_t threads() { return std::max(1u, std::thread::hardware_concurrency()); }

ConvergenceSetup default_setup() {
    ConvergenceSetup s;
    s.truth = default_scenario();
    s.prior = matched_prior(s.truth);
    s.target = default_target();
    s.settings = default_settings(s.truth);
    for (std::size_t l = 1; l <= 16; ++l) s.snapshot_counts.push_back(l);
    s.trials = 100;
    s.seed = 1;
    s.threads = threads();
    return s;
}

void optimal_filter_sanity() {
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
        auto sc = default_scenario();
        sc.cnr_db = 10.0 + 40.0 * u(rng);
        sc.azimuth_min = -60.0 + 100.0 * u(rng);
        sc.azimuth_max = sc.azimuth_min + 30.0 * u(rng);
        sc.params.crab_angle = -5.0 + 10.0 * u(rng);
        const auto r = ground_truth_ccm(sc);
        const auto s = steering_vector(sc.params, -90.0 + 180.0 * u(rng), -2000.0 + 4000.0 * u(rng));
        worst = std::max(worst, std::abs(if_loss(filter_weights(r, s), r, s)));
    }
    report(1, worst <= 1e-9, "optimal filter IF_Loss = 0 dB over 50 random scenarios (max |IF_Loss| " +
                                 sci(worst) + " dB)");
}

void convergence_rates() {
    auto s = default_setup();
    s.methods = {Method::Lsmi, Method::ColoredLoading, Method::SrJoint};
    const auto c = run_convergence(s);
    const auto lsmi = convergence_rate(c[0]);
    const auto cl = convergence_rate(c[1]);
    const auto sr = convergence_rate(c[2]);
    report(2, in_band(lsmi, 10, 14), "LSMI convergence rate in [10, 14] (got " + rate_text(lsmi) + ")");
    report(3, cl && *cl == 1, "CL matched-prior convergence rate = 1 (got " + rate_text(cl) + ")");
    const bool sr_ok = in_band(sr, 2, 6);
    const bool fallback = sr && lsmi && 2 * *sr < *lsmi;
    report(6, sr_ok, "SR-STAP convergence rate in [2, 6] (got " + rate_text(sr) + ", LSMI " + rate_text(lsmi) +
                         (sr_ok ? "" : fallback ? ", below half of LSMI" : ", not below half of LSMI") + ")");

    auto v = s;
    v.methods = {Method::ColoredLoading};
    v.prior.params.velocity = 285.0;
    const auto cv = run_convergence(v);
    const auto rv = convergence_rate(cv[0]);
    report(4, in_band(rv, 5, 8),
           "CL with assumed velocity 285 m/s: rate in [5, 8] (got " + rate_text(rv) + "; L=1..8: " + curve_text(cv[0]) + ")");

    auto cr = s;
    cr.methods = {Method::ColoredLoading};
    cr.truth.params.crab_angle = 2.0;
    cr.prior = matched_prior(s.truth);
    const auto cc = run_convergence(cr);
    const auto rc = convergence_rate(cc[0]);
    report(5, in_band(rc, 3, 6),
           "CL with assumed crab 0 deg vs true 2 deg: rate in [3, 6] (got " + rate_text(rc) + "; L=1..8: " +
               curve_text(cc[0]) + ")");
}

void velocity_robustness() {
    SweepSetup s;
    s.base = default_setup();
    s.base.methods = {Method::SrJoint};
    s.parameter = SweepParameter::Velocity;
    for (int v = 250; v <= 350; v += 10) s.values.push_back(v);
    s.snapshots = 3;
    const auto r = run_mismatch_sweep(s);
    double worst = 0.0;
    for (double v : r.mean_ifloss_db[0]) worst = std::min(worst, v);
    report(7, worst >= -3.0, "SR-STAP at L=3, assumed velocity 250..350 m/s: min mean IF_Loss >= -3 dB (got " +
                                 f2(worst) + " dB)");
}

void width_robustness() {
    SweepSetup s;
    s.base = default_setup();
    s.base.methods = {Method::SrJoint, Method::ColoredLoading};
    s.parameter = SweepParameter::Width;
    s.values = {20.0, 40.0};
    s.snapshots = 3;
    const auto r = run_mismatch_sweep(s);
    const double sr40 = r.mean_ifloss_db[0][1];
    const double cl_drop = r.mean_ifloss_db[1][0] - r.mean_ifloss_db[1][1];
    report(8, sr40 >= -3.0 && cl_drop >= 3.0,
           "width 40 deg assumed (true 20): SR-STAP " + f2(sr40) + " dB >= -3, CL degrades " + f2(cl_drop) +
               " dB >= 3 from matched");
}

void solver_oracle() {
    bool ok = true;
    double worst_rel = 0.0;
    int kkt_fail = 0;
    const std::size_t shapes[][4] = {{4, 4, 2, 2}, {2, 8, 4, 1}, {8, 2, 1, 4}, {3, 5, 2, 2}, {4, 3, 2, 2}, {2, 2, 4, 4}};
    std::mt19937_64 rng(77);
    for (int k = 0; k < 20; ++k) {
        const auto& sh = shapes[k % 6];
        RadarParams p;
        p.n_sensors = sh[0];
        p.n_pulses = sh[1];
        const Dictionary d(p, build_grid(p, sh[2], sh[3]));
        std::uniform_int_distribution<Eigen::Index> cell(0, d.cols() - 1);
        CVector alpha = CVector::Zero(d.cols());
        for (int j = 0; j < 3; ++j) alpha[cell(rng)] = testing::random_cvector(rng, 1, 3.0)[0];
        const CVector x = d.apply(alpha) + testing::random_cvector(rng, d.rows(), 0.3);
        const double eps = std::uniform_real_distribution<double>(0.05, 0.5)(rng) * x.norm();

        BpdnConfig cfg;
        cfg.epsilon = eps;
        cfg.tol = 1e-6;
        cfg.max_iters = 200000;
        const auto res = solve_bpdn(d, x, cfg);
        const auto ref = testing::barrier_bpdn(d.psi(), x, eps);
        const double rel = std::abs(res.objective - ref.objective) / ref.objective;
        worst_rel = std::max(worst_rel, rel);
        BpdnConfig audit;
        audit.epsilon = eps;
        if (!check_kkt(d, x, audit, res.spectrum.coeffs).passed) ++kkt_fail;
        ok = ok && rel <= 1e-3;
    }
    ok = ok && kkt_fail == 0;
    report(9, ok, "BPDN vs interior-point oracle on 20 instances: max relative objective error " +
                      sci(worst_rel) + ", KKT failures " + std::to_string(kkt_fail));
}

void pseudo_peaks() {
    const auto sc = default_scenario();
    const Dictionary d(sc.params, build_grid(sc.params, 4, 4));
    const auto xs = simulate_snapshots(sc, 6, 1);
    const auto cfg = noise_matched_config(sc.params);
    const auto spectra = solve_columns(d, xs, cfg, threads());
    const auto s = estimate_sparsity(sc.params, sc.azimuth_min, sc.azimuth_max, d.grid()).sparsity;
    const auto mask = testing::ridge_mask(d.grid(), sc.params, sc.azimuth_min, sc.azimuth_max);
    const double joint = testing::off_mask_fraction(joint_recover(d, xs, spectra, s).spectrum.power, mask);
    const double avg = testing::off_mask_fraction(average_power(spectra).power, mask);
    report(10, joint < avg, "off-ridge power fraction at L=6: joint " + sci(joint) + " < simple average " + sci(avg));
}

void range_scan_margins() {
    const auto sc = default_scenario();
    const auto p = sc.params;
    const TargetSpec t = default_target();  // amplitude 1: 0 dB per element
    const auto s = steering_vector(p, t.azimuth, target_doppler(p, t.radial_velocity));
    auto xs = simulate_snapshots(sc, 64, 1);
    xs = inject_target(std::move(xs), p, t, 32);
    const auto settings = default_settings(sc);
    const auto sr = range_scan(xs, p, matched_prior(sc), settings, s, RangeScanSetup{12, 4, Method::SrJoint, threads()});
    const auto ls = range_scan(xs, p, matched_prior(sc), settings, s, RangeScanSetup{40, 4, Method::Lsmi, threads()});
    const double m_sr = clutter_margin_db(sr, 32);
    const double m_ls = clutter_margin_db(ls, 32);
    report(11, m_sr >= 7.0 && m_ls >= 9.0,
           "range scan: SR-STAP (12 training) margin " + f2(m_sr) + " dB >= 7, LSMI (40 training) margin " + f2(m_ls) +
               " dB >= 9");
}

void sparsity_estimate() {
    const RadarParams p;
    const auto e = estimate_sparsity(p, 30.0, 50.0, build_grid(p, 4, 4));
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int violations = 0;
    for (int k = 0; k < 1000; ++k) {
        RadarParams q;
        q.n_sensors = 2 + static_cast<std::size_t>(u(rng) * 14);
        q.n_pulses = 2 + static_cast<std::size_t>(u(rng) * 14);
        q.velocity = 50.0 + 400.0 * u(rng);
        q.crab_angle = -10.0 + 20.0 * u(rng);
        const GridSpec g = build_grid(q, 1 + static_cast<std::size_t>(u(rng) * 5), 1 + static_cast<std::size_t>(u(rng) * 5));
        const double lo = -80.0 + 150.0 * u(rng);
        const double hi = lo + 1e-3 + (80.0 - lo) * u(rng);
        const auto f = estimate_sparsity(q, lo, hi, g);
        if (std::max(f.angle_cells, f.doppler_cells) > f.sparsity || f.sparsity > f.angle_cells + f.doppler_cells)
            ++violations;
    }
    report(12, e.sparsity == 7 && violations == 0,
           "sparsity estimate on the default scenario = " + std::to_string(e.sparsity) + " (want 7); range violations in 1000 cases: " +
               std::to_string(violations));
}

}  // namespace

int main() {
    optimal_filter_sanity();
    convergence_rates();
    velocity_robustness();
    width_robustness();
    solver_oracle();
    pseudo_peaks();
    range_scan_margins();
    sparsity_estimate();
    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
