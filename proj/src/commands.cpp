// SPDX-License-Identifier: Apache-2.0
#include "srstap/commands.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace srstap {

namespace {

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

std::string db_field(double v) { return std::isnan(v) ? "nan" : fmt("%.6f", v); }

std::string header(const char* command, const ExperimentConfig& cfg) {
    std::ostringstream o;
    o << "# srstap " << command << "\n"
      << "# config_hash," << config_hash(cfg) << "\n"
      << "# seed," << cfg.seed << "\n";
    return o.str();
}

void check_dims(const ExperimentConfig& cfg, const SnapshotFile& f) {
    const auto& p = cfg.scenario.params;
    if (f.n_sensors != p.n_sensors || f.n_pulses != p.n_pulses)
        throw DataError("input has N=" + std::to_string(f.n_sensors) + ", M=" + std::to_string(f.n_pulses) +
                        " but the config expects N=" + std::to_string(p.n_sensors) +
                        ", M=" + std::to_string(p.n_pulses));
    if (f.snapshots.count() == 0) throw DataError("input contains no snapshots");
}

SteeringVector target_steering(const ExperimentConfig& cfg) {
    const auto& p = cfg.scenario.params;
    return steering_vector(p, cfg.target.azimuth, target_doppler(p, cfg.target.radial_velocity));
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError(path + ": cannot open for writing");
    out << text;
    if (!out) throw DataError(path + ": write failed");
}

ConvergenceSetup base_setup(const ExperimentConfig& cfg, std::size_t threads) {
    ConvergenceSetup s;
    s.truth = cfg.scenario;
    s.prior = cfg.prior;
    s.target = cfg.scaled_target();
    s.settings = cfg.settings;
    s.methods = cfg.methods;
    s.snapshot_counts = cfg.snapshot_counts;
    s.trials = cfg.trials;
    s.seed = cfg.seed;
    s.threads = threads;
    return s;
}

}  // namespace

ExperimentConfig resolve_config(const CommandOptions& opts) {
    ExperimentConfig cfg = opts.config_path.empty() ? parse_config("", "<defaults>") : load_config(opts.config_path);
    if (opts.seed) cfg.seed = *opts.seed;
    return cfg;
}

SnapshotSet simulate_for(const ExperimentConfig& cfg) {
    SnapshotSet xs = simulate_snapshots(cfg.scenario, cfg.simulate_snapshots, cfg.seed);
    if (cfg.simulate_target_cell)
        xs = inject_target(std::move(xs), cfg.scenario.params, cfg.scaled_target(), *cfg.simulate_target_cell);
    return xs;
}

std::string sidecar_json(const ExperimentConfig& cfg, const SnapshotSet& xs) {
    const auto& p = cfg.scenario.params;
    nlohmann::ordered_json j;
    j["format"] = "STAPSNAP1";
    j["n_sensors"] = p.n_sensors;
    j["n_pulses"] = p.n_pulses;
    j["snapshots"] = xs.count();
    j["layout"] = cfg.simulate_sensor_major ? "sensor-major" : "pulse-major";
    j["seed"] = cfg.seed;
    j["config_hash"] = config_hash(cfg);
    j["radar"] = {{"velocity", p.velocity},     {"pri", p.pri},
                  {"wavelength", p.wavelength}, {"spacing", p.spacing},
                  {"crab_angle", p.crab_angle}, {"noise_power", p.noise_power}};
    j["scenario"] = {{"azimuth_min", cfg.scenario.azimuth_min},
                     {"azimuth_max", cfg.scenario.azimuth_max},
                     {"n_scatters", cfg.scenario.n_scatters},
                     {"cnr_db", cfg.scenario.cnr_db}};
    if (cfg.simulate_target_cell) {
        j["target"] = {{"cell", *cfg.simulate_target_cell},
                       {"azimuth", cfg.target.azimuth},
                       {"radial_velocity", cfg.target.radial_velocity},
                       {"snr_db", cfg.target_snr_db}};
    } else {
        j["target"] = nullptr;
    }
    return j.dump(2) + "\n";
}

void run_simulate(const ExperimentConfig& cfg, const std::string& output_path) {
    if (output_path.empty()) throw ConfigError("simulate: --output is required");
    const SnapshotSet xs = simulate_for(cfg);
    const auto& p = cfg.scenario.params;
    write_snapshot_file(output_path, xs, static_cast<std::uint32_t>(p.n_sensors), static_cast<std::uint32_t>(p.n_pulses),
                        cfg.simulate_sensor_major ? SnapshotLayout::SensorMajor : SnapshotLayout::PulseMajor);
    emit(sidecar_json(cfg, xs), output_path + ".json");
}

std::string spectrum_csv(const ExperimentConfig& cfg, const SnapshotFile& input, std::size_t threads) {
    check_dims(cfg, input);
    const auto& p = cfg.scenario.params;
    const auto& xs = input.snapshots;
    const Dictionary dict(p, build_grid(p, cfg.settings.rho_s, cfg.settings.rho_d));
    const GridSpec& g = dict.grid();

    bool need_sparse = false;
    for (auto m : cfg.spectrum_methods) need_sparse |= m != SpectrumMethod::Capon;
    std::vector<SparseSpectrum> spectra;
    if (need_sparse) spectra = solve_columns(dict, xs, cfg.settings.solver, threads);

    std::ostringstream o;
    o << header("spectrum", cfg) << "# input_snapshots," << xs.count() << "\n"
      << "method,angle_deg,doppler_hz,power_db\n";
    for (auto m : cfg.spectrum_methods) {
        RVector power;
        switch (m) {
            case SpectrumMethod::Capon: power = capon_spectrum(lsmi(xs, cfg.settings.beta_l), dict).power; break;
            case SpectrumMethod::SrSingle:
                if (cfg.spectrum_column >= xs.count())
                    throw DataError("spectrum: column " + std::to_string(cfg.spectrum_column) + " beyond input snapshots");
                power = spectra[cfg.spectrum_column].power();
                break;
            case SpectrumMethod::SrAverage: power = average_power(spectra).power; break;
            case SpectrumMethod::SrJoint: {
                const std::size_t s = cfg.settings.sparsity.value_or(
                    estimate_sparsity(cfg.prior.params, cfg.prior.azimuth_min, cfg.prior.azimuth_max, g).sparsity);
                power = joint_recover(dict, xs, spectra, s).spectrum.power;
                break;
            }
        }
        const double peak = power.maxCoeff();
        for (std::size_t d = 0; d < g.n_doppler; ++d) {
            for (std::size_t a = 0; a < g.n_angle; ++a) {
                const double v = power[static_cast<Eigen::Index>(g.column_index(a, d))];
                o << spectrum_method_name(m) << "," << fmt("%.6f", g.angle_nodes[a]) << ","
                  << fmt("%.6f", g.doppler_nodes[d]) << ","
                  << (peak > 0.0 && v > 0.0 ? fmt("%.6f", db10(v / peak)) : std::string("-999")) << "\n";
            }
        }
    }
    return o.str();
}

std::string convergence_csv(const ExperimentConfig& cfg, std::size_t threads) {
    const auto curves = run_convergence(base_setup(cfg, threads));
    std::ostringstream o;
    o << header("convergence", cfg) << "# trials," << cfg.trials << "\n"
      << "# ifloss_average,linear\n"
      << "method,snapshots,mean_ifloss_db,failures\n";
    for (const auto& c : curves)
        for (std::size_t i = 0; i < c.snapshot_counts.size(); ++i)
            o << method_name(c.method) << "," << c.snapshot_counts[i] << "," << db_field(c.mean_ifloss_db[i]) << ","
              << c.failures[i] << "\n";
    for (const auto& c : curves) {
        const auto rate = convergence_rate(c);
        o << "# convergence_rate," << method_name(c.method) << "," << (rate ? std::to_string(*rate) : "inf") << "\n";
    }
    return o.str();
}

std::string sweep_csv(const ExperimentConfig& cfg, std::size_t threads) {
    SweepSetup s;
    s.base = base_setup(cfg, threads);
    s.parameter = cfg.sweep_parameter;
    s.values = cfg.sweep_values;
    s.snapshots = cfg.sweep_snapshots;
    const auto r = run_mismatch_sweep(s);

    std::ostringstream o;
    o << header("sweep", cfg) << "# trials," << cfg.trials << "\n"
      << "# snapshots," << r.snapshots << "\n"
      << "# ifloss_average,linear\n"
      << "method," << sweep_parameter_name(r.parameter) << ",mean_ifloss_db,failures\n";
    for (std::size_t m = 0; m < r.methods.size(); ++m)
        for (std::size_t v = 0; v < r.values.size(); ++v)
            o << method_name(r.methods[m]) << "," << fmt("%g", r.values[v]) << "," << db_field(r.mean_ifloss_db[m][v])
              << "," << r.failures[m][v] << "\n";
    return o.str();
}

std::string rangescan_csv(const ExperimentConfig& cfg, const SnapshotFile& input, std::size_t threads) {
    check_dims(cfg, input);
    const auto s = target_steering(cfg);
    if (cfg.range_target_cell && *cfg.range_target_cell >= input.snapshots.count())
        throw DataError("rangescan: target_cell beyond input snapshots");

    std::ostringstream o;
    o << header("rangescan", cfg) << "# training," << cfg.range_training << "\n"
      << "# guards," << cfg.range_guards << "\n"
      << "method,cell,power_db\n";
    std::vector<std::pair<Method, double>> margins;
    for (Method m : cfg.range_methods) {
        RangeScanSetup scan{cfg.range_training, cfg.range_guards, m, threads};
        const auto profile = range_scan(input.snapshots, cfg.scenario.params, cfg.prior, cfg.settings, s, scan);
        for (std::size_t k = 0; k < profile.power_db.size(); ++k)
            o << method_name(m) << "," << k << "," << fmt("%.6f", profile.power_db[k]) << "\n";
        if (cfg.range_target_cell) margins.emplace_back(m, clutter_margin_db(profile, *cfg.range_target_cell));
    }
    for (const auto& [m, v] : margins) o << "# clutter_margin_db," << method_name(m) << "," << fmt("%.6f", v) << "\n";
    return o.str();
}

void run_command(const std::string& command, const CommandOptions& opts) {
    const ExperimentConfig cfg = resolve_config(opts);
    if (command == "simulate") {
        run_simulate(cfg, opts.output_path);
    } else if (command == "spectrum") {
        if (opts.input_path.empty()) throw ConfigError("spectrum: --input is required");
        emit(spectrum_csv(cfg, read_snapshot_file(opts.input_path), opts.threads), opts.output_path);
    } else if (command == "convergence") {
        emit(convergence_csv(cfg, opts.threads), opts.output_path);
    } else if (command == "sweep") {
        emit(sweep_csv(cfg, opts.threads), opts.output_path);
    } else if (command == "rangescan") {
        if (opts.input_path.empty()) throw ConfigError("rangescan: --input is required");
        emit(rangescan_csv(cfg, read_snapshot_file(opts.input_path), opts.threads), opts.output_path);
    } else {
        throw ConfigError("unknown command '" + command + "'");
    }
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const ConfigError*>(&e)) return 2;
    if (dynamic_cast<const DataError*>(&e)) return 3;
    if (dynamic_cast<const NumericalError*>(&e)) return 4;
    return 1;
}

}  // namespace srstap
