// SPDX-License-Identifier: Apache-2.0
#include "srstap/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace srstap {

std::string_view spectrum_method_name(SpectrumMethod m) {
    switch (m) {
        case SpectrumMethod::Capon: return "capon";
        case SpectrumMethod::SrSingle: return "sr-single";
        case SpectrumMethod::SrAverage: return "sr-average";
        case SpectrumMethod::SrJoint: return "sr-joint";
    }
    return "unknown";
}

SpectrumMethod parse_spectrum_method(std::string_view name) {
    for (SpectrumMethod m : {SpectrumMethod::Capon, SpectrumMethod::SrSingle, SpectrumMethod::SrAverage,
                             SpectrumMethod::SrJoint})
        if (spectrum_method_name(m) == name) return m;
    throw ConfigError("unknown spectrum method '" + std::string(name) + "'");
}

TargetSpec ExperimentConfig::scaled_target() const {
    TargetSpec t = target;
    t.amplitude = std::sqrt(from_db10(target_snr_db) * scenario.params.noise_power);
    return t;
}

void ExperimentConfig::validate() const {
    scenario.params.validate();
    scenario.validate();
    prior.params.validate();
    if (prior.azimuth_min > prior.azimuth_max) throw ConfigError("prior: azimuth_min must not exceed azimuth_max");
    if (prior.n_scatters < 1) throw ConfigError("prior: n_scatters must be >= 1");
    if (prior.params.n_sensors != scenario.params.n_sensors || prior.params.n_pulses != scenario.params.n_pulses)
        throw ConfigError("prior: array dimensions must match the radar");
    settings.solver.validate();
    if (settings.rho_s < 1 || settings.rho_d < 1) throw ConfigError("grid: rho_s and rho_d must be >= 1");
    if (settings.beta_l < 0.0 || settings.beta_d < 0.0) throw ConfigError("estimators: loadings must be >= 0");
    if (settings.sparsity && *settings.sparsity < 1) throw ConfigError("estimators: sparsity must be >= 1");
    if (methods.empty()) throw ConfigError("experiment: methods must not be empty");
    if (snapshot_counts.empty()) throw ConfigError("experiment: snapshot_counts must not be empty");
    for (auto l : snapshot_counts)
        if (l < 1) throw ConfigError("experiment: snapshot_counts entries must be >= 1");
    if (trials < 1) throw ConfigError("experiment: trials must be >= 1");
    if (simulate_snapshots < 1) throw ConfigError("simulate: snapshots must be >= 1");
    if (simulate_target_cell && *simulate_target_cell >= simulate_snapshots)
        throw ConfigError("simulate: target_cell must be below snapshots");
    if (spectrum_methods.empty()) throw ConfigError("spectrum: methods must not be empty");
    if (sweep_snapshots < 1) throw ConfigError("sweep: snapshots must be >= 1");
    if (range_training < 1) throw ConfigError("rangescan: training must be >= 1");
    if (range_methods.empty()) throw ConfigError("rangescan: methods must not be empty");
    for (Method m : range_methods)
        if (m == Method::Optimal) throw ConfigError("rangescan: the optimal method needs a known covariance");
}

namespace {

struct Value {
    enum class Kind { Number, String, Bool, Array } kind = Kind::Number;
    std::string text;  // number token or string contents
    double number = 0.0;
    bool boolean = false;
    std::vector<Value> items;
};

struct Entry {
    Value value;
    std::size_t line = 0;
    bool used = false;
};

struct Section {
    std::size_t line = 0;
    bool used = false;
    std::map<std::string, Entry> keys;
};

class Parser {
public:
    Parser(std::string_view text, const std::string& source) : text_(text), source_(source) {}

    std::map<std::string, Section> run() {
        std::map<std::string, Section> doc;
        std::string current;
        doc[current].line = 0;
        std::size_t pos = 0;
        while (pos <= text_.size()) {
            std::size_t end = text_.find('\n', pos);
            if (end == std::string_view::npos) end = text_.size();
            ++line_;
            line_text_ = text_.substr(pos, end - pos);
            if (!line_text_.empty() && line_text_.back() == '\r') line_text_.remove_suffix(1);
            col_ = 0;
            parse_line(doc, current);
            pos = end + 1;
        }
        return doc;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ConfigError(source_ + ":" + std::to_string(line_) + ": " + msg);
    }

    void skip_ws() {
        while (col_ < line_text_.size() && (line_text_[col_] == ' ' || line_text_[col_] == '\t')) ++col_;
    }

    bool at_end_or_comment() {
        skip_ws();
        return col_ >= line_text_.size() || line_text_[col_] == '#';
    }

    static bool is_key_char(char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' || c == '-';
    }

    std::string parse_key() {
        skip_ws();
        const std::size_t start = col_;
        while (col_ < line_text_.size() && is_key_char(line_text_[col_])) ++col_;
        if (col_ == start) fail("expected a key");
        return std::string(line_text_.substr(start, col_ - start));
    }

    void parse_line(std::map<std::string, Section>& doc, std::string& current) {
        if (at_end_or_comment()) return;
        if (line_text_[col_] == '[') {
            ++col_;
            current = parse_key();
            skip_ws();
            if (col_ >= line_text_.size() || line_text_[col_] != ']') fail("expected ']' after section name");
            ++col_;
            if (!at_end_or_comment()) fail("unexpected text after section header");
            if (doc.contains(current)) fail("duplicate section [" + current + "]");
            doc[current].line = line_;
            return;
        }
        const std::string key = parse_key();
        skip_ws();
        if (col_ >= line_text_.size() || line_text_[col_] != '=') fail("expected '=' after key '" + key + "'");
        ++col_;
        Value v = parse_value();
        if (!at_end_or_comment()) fail("unexpected text after value of '" + key + "'");
        auto& sec = doc[current];
        if (sec.keys.contains(key)) fail("duplicate key '" + key + "'");
        sec.keys[key] = Entry{std::move(v), line_, false};
    }

    Value parse_value() {
        skip_ws();
        if (col_ >= line_text_.size()) fail("missing value");
        const char c = line_text_[col_];
        if (c == '"') return parse_string();
        if (c == '[') return parse_array();

        const std::size_t start = col_;
        while (col_ < line_text_.size()) {
            const char d = line_text_[col_];
            if (d == ' ' || d == '\t' || d == ',' || d == ']' || d == '#') break;
            ++col_;
        }
        const std::string_view tok = line_text_.substr(start, col_ - start);
        Value v;
        if (tok == "true" || tok == "false") {
            v.kind = Value::Kind::Bool;
            v.boolean = tok == "true";
            v.text = tok;
            return v;
        }
        const char* first = tok.data();
        const char* last = tok.data() + tok.size();
        if (!tok.empty() && *first == '+') ++first;
        const auto [ptr, ec] = std::from_chars(first, last, v.number);
        if (ec != std::errc() || ptr != last || !std::isfinite(v.number)) fail("invalid value '" + std::string(tok) + "'");
        v.kind = Value::Kind::Number;
        v.text = std::string(first, last);
        return v;
    }

    Value parse_string() {
        ++col_;
        Value v;
        v.kind = Value::Kind::String;
        while (true) {
            if (col_ >= line_text_.size()) fail("unterminated string");
            const char c = line_text_[col_++];
            if (c == '"') break;
            if (c != '\\') {
                v.text.push_back(c);
                continue;
            }
            if (col_ >= line_text_.size()) fail("unterminated string");
            const char e = line_text_[col_++];
            switch (e) {
                case '"': v.text.push_back('"'); break;
                case '\\': v.text.push_back('\\'); break;
                case 'n': v.text.push_back('\n'); break;
                case 't': v.text.push_back('\t'); break;
                default: fail(std::string("unsupported escape '\\") + e + "'");
            }
        }
        return v;
    }

    Value parse_array() {
        ++col_;
        Value v;
        v.kind = Value::Kind::Array;
        while (true) {
            skip_ws();
            if (col_ >= line_text_.size()) fail("unterminated array (arrays must fit on one line)");
            if (line_text_[col_] == ']') {
                ++col_;
                return v;
            }
            v.items.push_back(parse_value());
            if (v.items.back().kind == Value::Kind::Array) fail("nested arrays are not supported");
            skip_ws();
            if (col_ < line_text_.size() && line_text_[col_] == ',') {
                ++col_;
            } else if (col_ >= line_text_.size() || line_text_[col_] != ']') {
                fail("expected ',' or ']' in array");
            }
        }
    }

    std::string_view text_;
    const std::string& source_;
    std::string_view line_text_;
    std::size_t line_ = 0;
    std::size_t col_ = 0;
};

class Reader {
public:
    Reader(std::map<std::string, Section> doc, const std::string& source) : doc_(std::move(doc)), source_(source) {}

    const Entry* find(const std::string& section, const std::string& key) {
        const auto s = doc_.find(section);
        if (s == doc_.end()) return nullptr;
        s->second.used = true;
        const auto k = s->second.keys.find(key);
        if (k == s->second.keys.end()) return nullptr;
        k->second.used = true;
        return &k->second;
    }

    [[noreturn]] void fail(const Entry& e, const std::string& key, const std::string& msg) const {
        throw ConfigError(source_ + ":" + std::to_string(e.line) + ": '" + key + "' " + msg);
    }

    void number(const std::string& sec, const std::string& key, double& out) {
        if (const Entry* e = find(sec, key)) out = as_number(*e, e->value, key);
    }

    void count(const std::string& sec, const std::string& key, std::size_t& out) {
        if (const Entry* e = find(sec, key)) out = as_count(*e, e->value, key);
    }

    void seed(const std::string& sec, const std::string& key, std::uint64_t& out) {
        if (const Entry* e = find(sec, key)) out = as_count(*e, e->value, key);
    }

    void flag(const std::string& sec, const std::string& key, bool& out) {
        if (const Entry* e = find(sec, key)) {
            if (e->value.kind != Value::Kind::Bool) fail(*e, key, "must be true or false");
            out = e->value.boolean;
        }
    }

    // Integer >= 0, or -1 meaning "unset".
    void optional_cell(const std::string& sec, const std::string& key, std::optional<std::size_t>& out) {
        if (const Entry* e = find(sec, key)) {
            if (e->value.kind == Value::Kind::Number && e->value.text == "-1") {
                out.reset();
                return;
            }
            out = as_count(*e, e->value, key);
        }
    }

    // Number, or the string "noise".
    void number_or_noise(const std::string& sec, const std::string& key, double& out, bool& from_noise) {
        if (const Entry* e = find(sec, key)) {
            if (e->value.kind == Value::Kind::String) {
                if (e->value.text != "noise") fail(*e, key, "must be a number or \"noise\"");
                from_noise = true;
                return;
            }
            out = as_number(*e, e->value, key);
            from_noise = false;
        }
    }

    double as_number(const Entry& e, const Value& v, const std::string& key) const {
        if (v.kind != Value::Kind::Number) fail(e, key, "must be a number");
        return v.number;
    }

    std::size_t as_count(const Entry& e, const Value& v, const std::string& key) const {
        if (v.kind != Value::Kind::Number) fail(e, key, "must be a non-negative integer");
        std::uint64_t out = 0;
        const auto [ptr, ec] = std::from_chars(v.text.data(), v.text.data() + v.text.size(), out);
        if (ec != std::errc() || ptr != v.text.data() + v.text.size())
            fail(e, key, "must be a non-negative integer");
        return static_cast<std::size_t>(out);
    }

    std::string as_string(const Entry& e, const Value& v, const std::string& key) const {
        if (v.kind != Value::Kind::String) fail(e, key, "must be a string");
        return v.text;
    }

    void finish() const {
        for (const auto& [name, sec] : doc_) {
            if (!sec.used && !name.empty())
                throw ConfigError(source_ + ":" + std::to_string(sec.line) + ": unknown section [" + name + "]");
            for (const auto& [key, e] : sec.keys) {
                if (!e.used) {
                    const std::string where = name.empty() ? "at top level" : "in [" + name + "]";
                    throw ConfigError(source_ + ":" + std::to_string(e.line) + ": unknown key '" + key + "' " + where);
                }
            }
        }
    }

    // Marks a section as known even when none of its keys are present.
    void touch(const std::string& section) {
        if (auto s = doc_.find(section); s != doc_.end()) s->second.used = true;
    }

private:
    std::map<std::string, Section> doc_;
    const std::string& source_;
};

template <class Fn>
auto rethrow_at(const std::string& source, const Entry* e, Fn&& fn) {
    try {
        return fn();
    } catch (const ConfigError& err) {
        throw ConfigError(source + ":" + std::to_string(e ? e->line : 0) + ": " + err.what());
    }
}

std::vector<double> default_sweep_values(SweepParameter p, const ClutterScenario& sc) {
    std::vector<double> out;
    switch (p) {
        case SweepParameter::Velocity:
            for (int dv = -50; dv <= 50; dv += 10) out.push_back(sc.params.velocity + dv);
            break;
        case SweepParameter::Width:
            for (int w = 10; w <= 40; w += 5) out.push_back(w);
            break;
        case SweepParameter::Crab:
            for (int dc = -4; dc <= 4; ++dc) out.push_back(sc.params.crab_angle + dc);
            break;
    }
    return out;
}

}  // namespace

ExperimentConfig parse_config(std::string_view text, const std::string& source) {
    Reader r(Parser(text, source).run(), source);
    for (const char* s : {"radar", "scenario", "target", "prior", "grid", "solver", "estimators", "experiment",
                          "simulate", "spectrum", "sweep", "rangescan"})
        r.touch(s);

    ExperimentConfig cfg;
    cfg.scenario = default_scenario();
    cfg.target = default_target();

    auto& rp = cfg.scenario.params;
    r.count("radar", "n_sensors", rp.n_sensors);
    r.count("radar", "n_pulses", rp.n_pulses);
    r.number("radar", "velocity", rp.velocity);
    r.number("radar", "pri", rp.pri);
    r.number("radar", "wavelength", rp.wavelength);
    r.number("radar", "spacing", rp.spacing);
    r.number("radar", "crab_angle", rp.crab_angle);
    r.number("radar", "noise_power", rp.noise_power);

    r.number("scenario", "azimuth_min", cfg.scenario.azimuth_min);
    r.number("scenario", "azimuth_max", cfg.scenario.azimuth_max);
    r.count("scenario", "n_scatters", cfg.scenario.n_scatters);
    r.number("scenario", "cnr_db", cfg.scenario.cnr_db);

    r.number("target", "azimuth", cfg.target.azimuth);
    r.number("target", "radial_velocity", cfg.target.radial_velocity);
    r.number("target", "snr_db", cfg.target_snr_db);

    cfg.prior = matched_prior(cfg.scenario);
    r.number("prior", "velocity", cfg.prior.params.velocity);
    r.number("prior", "crab_angle", cfg.prior.params.crab_angle);
    r.number("prior", "azimuth_min", cfg.prior.azimuth_min);
    r.number("prior", "azimuth_max", cfg.prior.azimuth_max);
    r.count("prior", "n_scatters", cfg.prior.n_scatters);

    auto& st = cfg.settings;
    r.count("grid", "rho_s", st.rho_s);
    r.count("grid", "rho_d", st.rho_d);

    r.number_or_noise("solver", "epsilon", st.solver.epsilon, cfg.epsilon_from_noise);
    r.count("solver", "max_iters", st.solver.max_iters);
    r.number("solver", "tol", st.solver.tol);
    r.number("solver", "rho", st.solver.rho);
    r.count("solver", "check_every", st.solver.check_every);
    if (cfg.epsilon_from_noise) st.solver.epsilon = noise_matched_config(rp).epsilon;

    r.number_or_noise("estimators", "beta_l", st.beta_l, cfg.beta_l_from_noise);
    if (cfg.beta_l_from_noise) st.beta_l = rp.noise_power;
    r.number("estimators", "beta_d", st.beta_d);
    r.flag("estimators", "prior_cnr_scaling", st.prior_cnr_scaling);
    st.prior_cnr_db = cfg.scenario.cnr_db;
    r.number("estimators", "prior_cnr_db", st.prior_cnr_db);
    std::size_t sparsity = 0;
    r.count("estimators", "sparsity", sparsity);
    if (sparsity > 0) st.sparsity = sparsity;

    if (const Entry* e = r.find("experiment", "methods")) {
        cfg.methods.clear();
        if (e->value.kind != Value::Kind::Array) r.fail(*e, "methods", "must be an array");
        for (const auto& v : e->value.items)
            cfg.methods.push_back(rethrow_at(source, e, [&] { return parse_method(r.as_string(*e, v, "methods")); }));
    }
    if (const Entry* e = r.find("experiment", "snapshot_counts")) {
        if (e->value.kind != Value::Kind::Array) r.fail(*e, "snapshot_counts", "must be an array");
        for (const auto& v : e->value.items) cfg.snapshot_counts.push_back(r.as_count(*e, v, "snapshot_counts"));
    } else {
        for (std::size_t l = 1; l <= 16; ++l) cfg.snapshot_counts.push_back(l);
    }
    r.count("experiment", "trials", cfg.trials);
    r.seed("experiment", "seed", cfg.seed);

    r.count("simulate", "snapshots", cfg.simulate_snapshots);
    r.optional_cell("simulate", "target_cell", cfg.simulate_target_cell);
    if (const Entry* e = r.find("simulate", "layout")) {
        const std::string layout = r.as_string(*e, e->value, "layout");
        if (layout == "pulse-major") cfg.simulate_sensor_major = false;
        else if (layout == "sensor-major") cfg.simulate_sensor_major = true;
        else r.fail(*e, "layout", "must be \"pulse-major\" or \"sensor-major\"");
    }

    if (const Entry* e = r.find("spectrum", "methods")) {
        cfg.spectrum_methods.clear();
        if (e->value.kind != Value::Kind::Array) r.fail(*e, "methods", "must be an array");
        for (const auto& v : e->value.items)
            cfg.spectrum_methods.push_back(
                rethrow_at(source, e, [&] { return parse_spectrum_method(r.as_string(*e, v, "methods")); }));
    }
    r.count("spectrum", "column", cfg.spectrum_column);

    if (const Entry* e = r.find("sweep", "parameter"))
        cfg.sweep_parameter =
            rethrow_at(source, e, [&] { return parse_sweep_parameter(r.as_string(*e, e->value, "parameter")); });
    if (const Entry* e = r.find("sweep", "values")) {
        if (e->value.kind != Value::Kind::Array) r.fail(*e, "values", "must be an array");
        for (const auto& v : e->value.items) cfg.sweep_values.push_back(r.as_number(*e, v, "values"));
    }
    if (cfg.sweep_values.empty()) cfg.sweep_values = default_sweep_values(cfg.sweep_parameter, cfg.scenario);
    r.count("sweep", "snapshots", cfg.sweep_snapshots);

    r.count("rangescan", "training", cfg.range_training);
    r.count("rangescan", "guards", cfg.range_guards);
    if (const Entry* e = r.find("rangescan", "methods")) {
        cfg.range_methods.clear();
        if (e->value.kind != Value::Kind::Array) r.fail(*e, "methods", "must be an array");
        for (const auto& v : e->value.items)
            cfg.range_methods.push_back(rethrow_at(source, e, [&] { return parse_method(r.as_string(*e, v, "methods")); }));
    }
    r.optional_cell("rangescan", "target_cell", cfg.range_target_cell);

    r.finish();
    try {
        cfg.validate();
    } catch (const ConfigError& err) {
        throw ConfigError(source + ": " + err.what());
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(path + ": cannot open config file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path);
}

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

template <class T, class F>
std::string array(const std::vector<T>& xs, F&& fmt) {
    std::string out = "[";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ", ";
        out += fmt(xs[i]);
    }
    return out + "]";
}

std::string quoted(std::string_view s) { return "\"" + std::string(s) + "\""; }

}  // namespace

std::string dump_config(const ExperimentConfig& c) {
    const auto& p = c.scenario.params;
    const auto& st = c.settings;
    std::ostringstream o;
    o << "[radar]\n"
      << "n_sensors = " << p.n_sensors << "\n"
      << "n_pulses = " << p.n_pulses << "\n"
      << "velocity = " << num(p.velocity) << "\n"
      << "pri = " << num(p.pri) << "\n"
      << "wavelength = " << num(p.wavelength) << "\n"
      << "spacing = " << num(p.spacing) << "\n"
      << "crab_angle = " << num(p.crab_angle) << "\n"
      << "noise_power = " << num(p.noise_power) << "\n\n";
    o << "[scenario]\n"
      << "azimuth_min = " << num(c.scenario.azimuth_min) << "\n"
      << "azimuth_max = " << num(c.scenario.azimuth_max) << "\n"
      << "n_scatters = " << c.scenario.n_scatters << "\n"
      << "cnr_db = " << num(c.scenario.cnr_db) << "\n\n";
    o << "[target]\n"
      << "azimuth = " << num(c.target.azimuth) << "\n"
      << "radial_velocity = " << num(c.target.radial_velocity) << "\n"
      << "snr_db = " << num(c.target_snr_db) << "\n\n";
    o << "[prior]\n"
      << "velocity = " << num(c.prior.params.velocity) << "\n"
      << "crab_angle = " << num(c.prior.params.crab_angle) << "\n"
      << "azimuth_min = " << num(c.prior.azimuth_min) << "\n"
      << "azimuth_max = " << num(c.prior.azimuth_max) << "\n"
      << "n_scatters = " << c.prior.n_scatters << "\n\n";
    o << "[grid]\n"
      << "rho_s = " << st.rho_s << "\n"
      << "rho_d = " << st.rho_d << "\n\n";
    o << "[solver]\n"
      << "epsilon = " << (c.epsilon_from_noise ? quoted("noise") : num(st.solver.epsilon)) << "\n"
      << "max_iters = " << st.solver.max_iters << "\n"
      << "tol = " << num(st.solver.tol) << "\n"
      << "rho = " << num(st.solver.rho) << "\n"
      << "check_every = " << st.solver.check_every << "\n\n";
    o << "[estimators]\n"
      << "beta_l = " << (c.beta_l_from_noise ? quoted("noise") : num(st.beta_l)) << "\n"
      << "beta_d = " << num(st.beta_d) << "\n"
      << "prior_cnr_scaling = " << (st.prior_cnr_scaling ? "true" : "false") << "\n"
      << "prior_cnr_db = " << num(st.prior_cnr_db) << "\n"
      << "sparsity = " << st.sparsity.value_or(0) << "\n\n";
    o << "[experiment]\n"
      << "methods = " << array(c.methods, [](Method m) { return quoted(method_name(m)); }) << "\n"
      << "snapshot_counts = " << array(c.snapshot_counts, [](std::size_t l) { return std::to_string(l); }) << "\n"
      << "trials = " << c.trials << "\n"
      << "seed = " << c.seed << "\n\n";
    o << "[simulate]\n"
      << "snapshots = " << c.simulate_snapshots << "\n"
      << "target_cell = " << (c.simulate_target_cell ? std::to_string(*c.simulate_target_cell) : "-1") << "\n"
      << "layout = " << quoted(c.simulate_sensor_major ? "sensor-major" : "pulse-major") << "\n\n";
    o << "[spectrum]\n"
      << "methods = " << array(c.spectrum_methods, [](SpectrumMethod m) { return quoted(spectrum_method_name(m)); })
      << "\n"
      << "column = " << c.spectrum_column << "\n\n";
    o << "[sweep]\n"
      << "parameter = " << quoted(sweep_parameter_name(c.sweep_parameter)) << "\n"
      << "values = " << array(c.sweep_values, num) << "\n"
      << "snapshots = " << c.sweep_snapshots << "\n\n";
    o << "[rangescan]\n"
      << "training = " << c.range_training << "\n"
      << "guards = " << c.range_guards << "\n"
      << "methods = " << array(c.range_methods, [](Method m) { return quoted(method_name(m)); }) << "\n"
      << "target_cell = " << (c.range_target_cell ? std::to_string(*c.range_target_cell) : "-1") << "\n";
    return o.str();
}

std::string config_hash(const ExperimentConfig& cfg) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : dump_config(cfg)) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace srstap
