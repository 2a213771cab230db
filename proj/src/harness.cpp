// SPDX-License-Identifier: Apache-2.0
#include "srstap/harness.hpp"

#include "srstap/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>

namespace srstap {

std::string_view method_name(Method m) {
    switch (m) {
        case Method::Optimal: return "optimal";
        case Method::Lsmi: return "lsmi";
        case Method::ColoredLoading: return "cl";
        case Method::SrJoint: return "sr-joint";
        case Method::SrAverage: return "sr-average";
        case Method::NonAdaptive: return "non-adaptive";
    }
    return "unknown";
}

Method parse_method(std::string_view name) {
    for (Method m : {Method::Optimal, Method::Lsmi, Method::ColoredLoading, Method::SrJoint, Method::SrAverage,
                     Method::NonAdaptive}) {
        if (method_name(m) == name) return m;
    }
    throw ConfigError("unknown method '" + std::string(name) + "'");
}

std::string_view sweep_parameter_name(SweepParameter p) {
    switch (p) {
        case SweepParameter::Velocity: return "velocity";
        case SweepParameter::Width: return "width";
        case SweepParameter::Crab: return "crab";
    }
    return "unknown";
}

SweepParameter parse_sweep_parameter(std::string_view name) {
    for (SweepParameter p : {SweepParameter::Velocity, SweepParameter::Width, SweepParameter::Crab})
        if (sweep_parameter_name(p) == name) return p;
    throw ConfigError("unknown sweep parameter '" + std::string(name) + "'");
}

MethodSettings default_settings(const ClutterScenario& truth) {
    MethodSettings s;
    s.beta_l = truth.params.noise_power;
    s.prior_cnr_db = truth.cnr_db;
    s.solver = noise_matched_config(truth.params);
    return s;
}

namespace {

bool is_sparse(Method m) { return m == Method::SrJoint || m == Method::SrAverage; }

bool any_sparse(const std::vector<Method>& ms) { return std::any_of(ms.begin(), ms.end(), is_sparse); }

double s_rinv_s(const CovarianceEstimate& r, const SteeringVector& s) {
    const Eigen::LLT<CMatrix> llt(r.matrix);
    if (llt.info() != Eigen::Success) throw NumericalError("reference covariance is not positive definite");
    return s.values.dot(llt.solve(s.values)).real();
}

double if_loss_linear(const FilterWeights& w, const CovarianceEstimate& r, const SteeringVector& s, double opt) {
    const double num = std::norm(w.w.dot(s.values));
    const double den = w.w.dot(r.matrix * w.w).real();
    if (!(den > 0.0)) throw NumericalError("if_loss: w^H R w must be positive");
    return num / (den * opt);
}

struct PriorModel {
    CovarianceEstimate r_c;
    std::size_t sparsity = 1;
};

PriorModel make_prior_model(const PriorKnowledge& prior, const MethodSettings& settings, const GridSpec& grid) {
    PriorModel pm{assumed_ccm(prior), 1};
    if (settings.prior_cnr_scaling && prior.n_scatters > 0) {
        pm.r_c.matrix *= from_db10(settings.prior_cnr_db) * prior.params.noise_power /
                         static_cast<double>(prior.n_scatters);
    }
    pm.sparsity = settings.sparsity.value_or(
        estimate_sparsity(prior.params, prior.azimuth_min, prior.azimuth_max, grid).sparsity);
    return pm;
}

CovarianceEstimate estimate(Method m, const SnapshotSet& xs, std::span<const SparseSpectrum> spectra,
                            const PriorModel& prior, const MethodSettings& settings, const Dictionary* dict,
                            const CovarianceEstimate* truth) {
    switch (m) {
        case Method::Optimal:
            if (truth == nullptr) throw std::invalid_argument("optimal method needs the true covariance");
            return *truth;
        case Method::Lsmi: return lsmi(xs, settings.beta_l);
        case Method::ColoredLoading: return colored_loading(xs, prior.r_c, settings.beta_d, settings.beta_l);
        case Method::SrJoint:
            return sr_ccm(joint_recover(*dict, xs, spectra, prior.sparsity).spectrum, *dict, settings.beta_l);
        case Method::SrAverage: return sr_ccm(average_power(spectra), *dict, settings.beta_l);
        case Method::NonAdaptive: {
            const auto n = static_cast<Eigen::Index>(xs.dof());
            return CovarianceEstimate{CMatrix::Identity(n, n), Estimator::Identity, 0.0, 0.0};
        }
    }
    throw std::invalid_argument("unhandled method");
}

// Solves columns in order and stops at the first failure. The returned
// vector holds every column that solved.
std::vector<SparseSpectrum> solve_prefix(const Dictionary& d, const SnapshotSet& xs, const BpdnConfig& cfg) {
    std::vector<SparseSpectrum> out;
    out.reserve(xs.count());
    for (std::size_t k = 0; k < xs.count(); ++k) {
        try {
            out.push_back(solve_bpdn(d, xs.data.col(static_cast<Eigen::Index>(k)), cfg).spectrum);
        } catch (const BpdnNotConverged&) {
            break;
        }
    }
    return out;
}

constexpr double kFailed = std::numeric_limits<double>::quiet_NaN();

// Linear-domain mean of the finite entries, in dB, with the NaN count.
std::pair<double, std::size_t> reduce(const std::vector<double>& values) {
    double sum = 0.0;
    std::size_t good = 0;
    for (double v : values) {
        if (std::isnan(v)) continue;
        sum += v;
        ++good;
    }
    const double mean_db = good == 0 ? kFailed : db10(sum / static_cast<double>(good));
    return {mean_db, values.size() - good};
}

}  // namespace

double improvement_factor(const FilterWeights& w, const CovarianceEstimate& r_true, const SteeringVector& s) {
    if (w.w.norm() == 0.0) throw NumericalError("improvement_factor: zero weight vector");
    const double out_scr = std::norm(w.w.dot(s.values)) / w.w.dot(r_true.matrix * w.w).real();
    const double in_scr = s.values.squaredNorm() / r_true.matrix.trace().real();
    return db10(out_scr / in_scr);
}

double if_loss(const FilterWeights& w, const CovarianceEstimate& r_true, const SteeringVector& s) {
    if (w.w.norm() == 0.0) throw NumericalError("if_loss: zero weight vector");
    return db10(if_loss_linear(w, r_true, s, s_rinv_s(r_true, s)));
}

std::optional<std::size_t> convergence_rate(const IfLossCurve& curve) {
    for (std::size_t i = 0; i < curve.snapshot_counts.size(); ++i)
        if (curve.mean_ifloss_db[i] >= -3.0) return curve.snapshot_counts[i];
    return std::nullopt;
}

std::vector<IfLossCurve> run_convergence(const ConvergenceSetup& setup) {
    if (setup.trials < 1) throw ConfigError("convergence: trials must be >= 1");
    if (setup.snapshot_counts.empty()) throw ConfigError("convergence: snapshot_counts must not be empty");
    if (setup.methods.empty()) throw ConfigError("convergence: no methods selected");
    for (std::size_t l : setup.snapshot_counts)
        if (l < 1) throw ConfigError("convergence: snapshot counts must be >= 1");

    const auto& truth = setup.truth;
    const CovarianceEstimate r_true = ground_truth_ccm(truth);
    const SteeringVector s = steering_vector(truth.params, setup.target.azimuth,
                                             target_doppler(truth.params, setup.target.radial_velocity));
    const double opt = s_rinv_s(r_true, s);
    const GridSpec grid = build_grid(truth.params, setup.settings.rho_s, setup.settings.rho_d);
    const PriorModel prior = make_prior_model(setup.prior, setup.settings, grid);
    std::unique_ptr<Dictionary> dict;
    if (any_sparse(setup.methods)) dict = std::make_unique<Dictionary>(truth.params, grid);

    const std::size_t max_l = *std::max_element(setup.snapshot_counts.begin(), setup.snapshot_counts.end());
    const std::size_t n_methods = setup.methods.size();
    const std::size_t n_points = setup.snapshot_counts.size();

    // loss[trial][method * n_points + point]
    std::vector<std::vector<double>> loss(setup.trials, std::vector<double>(n_methods * n_points, kFailed));
    parallel_for(setup.trials, setup.threads, [&](std::size_t trial) {
        const SnapshotSet xs = simulate_snapshots(truth, max_l, derive_seed(setup.seed, trial));
        std::vector<SparseSpectrum> spectra;
        if (dict) spectra = solve_prefix(*dict, xs, setup.settings.solver);

        for (std::size_t p = 0; p < n_points; ++p) {
            const std::size_t l = setup.snapshot_counts[p];
            const SnapshotSet sub = xs.prefix(l);
            for (std::size_t mi = 0; mi < n_methods; ++mi) {
                const Method m = setup.methods[mi];
                if (is_sparse(m) && spectra.size() < l) continue;
                const std::span<const SparseSpectrum> used =
                    is_sparse(m) ? std::span<const SparseSpectrum>(spectra.data(), l) : std::span<const SparseSpectrum>();
                try {
                    const auto r_hat = estimate(m, sub, used, prior, setup.settings, dict.get(), &r_true);
                    loss[trial][mi * n_points + p] = if_loss_linear(filter_weights(r_hat, s), r_true, s, opt);
                } catch (const NumericalError&) {
                    // counted as a failure
                }
            }
        }
    });

    std::vector<IfLossCurve> curves;
    for (std::size_t mi = 0; mi < n_methods; ++mi) {
        IfLossCurve c{setup.methods[mi], setup.snapshot_counts, {}, {}, setup.trials};
        for (std::size_t p = 0; p < n_points; ++p) {
            std::vector<double> column(setup.trials);
            for (std::size_t t = 0; t < setup.trials; ++t) column[t] = loss[t][mi * n_points + p];
            const auto [mean_db, failed] = reduce(column);
            c.mean_ifloss_db.push_back(mean_db);
            c.failures.push_back(failed);
        }
        curves.push_back(std::move(c));
    }
    return curves;
}

PriorKnowledge mismatched_prior(const PriorKnowledge& base, SweepParameter p, double value) {
    PriorKnowledge out = base;
    switch (p) {
        case SweepParameter::Velocity: out.params.velocity = value; break;
        case SweepParameter::Crab: out.params.crab_angle = value; break;
        case SweepParameter::Width: {
            if (value < 0.0) throw ConfigError("sweep: width must be >= 0");
            const double centre = 0.5 * (base.azimuth_min + base.azimuth_max);
            out.azimuth_min = centre - 0.5 * value;
            out.azimuth_max = centre + 0.5 * value;
            break;
        }
    }
    return out;
}

SweepResult run_mismatch_sweep(const SweepSetup& setup) {
    const auto& base = setup.base;
    if (setup.values.empty()) throw ConfigError("sweep: values must not be empty");
    if (base.trials < 1) throw ConfigError("sweep: trials must be >= 1");
    if (setup.snapshots < 1) throw ConfigError("sweep: snapshots must be >= 1");
    if (base.methods.empty()) throw ConfigError("sweep: no methods selected");

    const auto& truth = base.truth;
    const CovarianceEstimate r_true = ground_truth_ccm(truth);
    const SteeringVector s =
        steering_vector(truth.params, base.target.azimuth, target_doppler(truth.params, base.target.radial_velocity));
    const double opt = s_rinv_s(r_true, s);
    const GridSpec grid = build_grid(truth.params, base.settings.rho_s, base.settings.rho_d);
    std::unique_ptr<Dictionary> dict;
    if (any_sparse(base.methods)) dict = std::make_unique<Dictionary>(truth.params, grid);

    std::vector<PriorModel> priors;
    priors.reserve(setup.values.size());
    for (double v : setup.values)
        priors.push_back(make_prior_model(mismatched_prior(base.prior, setup.parameter, v), base.settings, grid));

    const std::size_t n_methods = base.methods.size();
    const std::size_t n_values = setup.values.size();
    std::vector<std::vector<double>> loss(base.trials, std::vector<double>(n_methods * n_values, kFailed));
    parallel_for(base.trials, base.threads, [&](std::size_t trial) {
        const SnapshotSet xs = simulate_snapshots(truth, setup.snapshots, derive_seed(base.seed, trial));
        std::vector<SparseSpectrum> spectra;
        if (dict) spectra = solve_prefix(*dict, xs, base.settings.solver);
        const bool sparse_ok = spectra.size() == xs.count();

        for (std::size_t vi = 0; vi < n_values; ++vi) {
            for (std::size_t mi = 0; mi < n_methods; ++mi) {
                const Method m = base.methods[mi];
                if (is_sparse(m) && !sparse_ok) continue;
                try {
                    const auto r_hat = estimate(m, xs, spectra, priors[vi], base.settings, dict.get(), &r_true);
                    loss[trial][mi * n_values + vi] = if_loss_linear(filter_weights(r_hat, s), r_true, s, opt);
                } catch (const NumericalError&) {
                }
            }
        }
    });

    SweepResult out{setup.parameter, setup.values, base.methods, {}, {}, setup.snapshots, base.trials};
    for (std::size_t mi = 0; mi < n_methods; ++mi) {
        std::vector<double> means;
        std::vector<std::size_t> fails;
        for (std::size_t vi = 0; vi < n_values; ++vi) {
            std::vector<double> column(base.trials);
            for (std::size_t t = 0; t < base.trials; ++t) column[t] = loss[t][mi * n_values + vi];
            const auto [mean_db, failed] = reduce(column);
            means.push_back(mean_db);
            fails.push_back(failed);
        }
        out.mean_ifloss_db.push_back(std::move(means));
        out.failures.push_back(std::move(fails));
    }
    return out;
}

std::vector<std::size_t> training_cells(std::size_t n_cells, std::size_t test_cell, std::size_t training,
                                        std::size_t guards) {
    if (test_cell >= n_cells) throw std::out_of_range("training_cells: test cell beyond range extent");
    if (training + guards >= n_cells) throw DataError("range scan: training + guard cells must be fewer than the range cells");

    std::vector<std::size_t> order;
    order.reserve(n_cells - 1);
    for (std::size_t j = 0; j < n_cells; ++j)
        if (j != test_cell) order.push_back(j);
    auto dist = [&](std::size_t j) { return j > test_cell ? j - test_cell : test_cell - j; };
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return dist(a) < dist(b); });

    std::vector<std::size_t> out(order.begin() + static_cast<std::ptrdiff_t>(guards),
                                 order.begin() + static_cast<std::ptrdiff_t>(guards + training));
    std::sort(out.begin(), out.end());
    return out;
}

RangeProfile range_scan(const SnapshotSet& cells, const RadarParams& p, const PriorKnowledge& prior,
                        const MethodSettings& settings, const SteeringVector& target, const RangeScanSetup& scan) {
    if (cells.dof() != p.dof()) throw DataError("range scan: snapshot length does not match N*M");
    if (scan.training < 1) throw ConfigError("range scan: training must be >= 1");
    if (scan.method == Method::Optimal) throw ConfigError("range scan: the optimal method needs a known covariance");
    const std::size_t n = cells.count();
    if (scan.training + scan.guards >= n) throw DataError("range scan: insufficient range cells for the window");

    const GridSpec grid = build_grid(p, settings.rho_s, settings.rho_d);
    const PriorModel pm = make_prior_model(prior, settings, grid);
    std::unique_ptr<Dictionary> dict;
    std::vector<SparseSpectrum> spectra;
    if (is_sparse(scan.method)) {
        dict = std::make_unique<Dictionary>(p, grid);
        spectra = solve_columns(*dict, cells, settings.solver, scan.threads);
    }

    RangeProfile out;
    out.power.assign(n, 0.0);
    parallel_for(n, scan.threads, [&](std::size_t k) {
        const auto idx = training_cells(n, k, scan.training, scan.guards);
        SnapshotSet train{CMatrix(cells.data.rows(), static_cast<Eigen::Index>(idx.size())), cells.seed, cells.tag};
        std::vector<SparseSpectrum> sub;
        for (std::size_t j = 0; j < idx.size(); ++j) {
            train.data.col(static_cast<Eigen::Index>(j)) = cells.data.col(static_cast<Eigen::Index>(idx[j]));
            if (dict) sub.push_back(spectra[idx[j]]);
        }
        const auto r_hat = estimate(scan.method, train, sub, pm, settings, dict.get(), nullptr);
        const auto w = filter_weights(r_hat, target);
        out.power[k] = std::norm(w.w.dot(cells.data.col(static_cast<Eigen::Index>(k))));
    });

    const double peak = *std::max_element(out.power.begin(), out.power.end());
    out.power_db.reserve(n);
    for (double v : out.power) out.power_db.push_back(peak > 0.0 && v > 0.0 ? db10(v / peak) : -999.0);
    return out;
}

double clutter_margin_db(const RangeProfile& profile, std::size_t target_cell) {
    if (target_cell >= profile.power.size()) throw std::out_of_range("clutter_margin_db: target cell out of range");
    double strongest = 0.0;
    for (std::size_t j = 0; j < profile.power.size(); ++j)
        if (j != target_cell) strongest = std::max(strongest, profile.power[j]);
    return db10(profile.power[target_cell] / strongest);
}

}  // namespace srstap
