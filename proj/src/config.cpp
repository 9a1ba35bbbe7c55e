#include "levyexp/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace levyexp {

namespace {

std::string trim(const std::string& text) {
    std::size_t begin = 0;
    std::size_t end = text.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) {
        ++begin;
    }
    while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) {
        --end;
    }
    return text.substr(begin, end - begin);
}

double parse_double(const std::string& key, const std::string& text) {
    try {
        std::size_t used = 0;
        const double value = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return value;
    } catch (const std::exception&) {
        throw ConfigError(key + ": expected a number, got '" + text + "'");
    }
}

}  // namespace

FlatDoc FlatDoc::parse(const std::string& text) {
    FlatDoc doc;
    std::istringstream stream(text);
    std::string line;
    int line_number = 0;
    while (std::getline(stream, line)) {
        ++line_number;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(line_number) +
                              ": expected 'key = value'");
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError("line " + std::to_string(line_number) +
                              ": empty key");
        }
        if (doc.entries_.count(key)) {
            throw ConfigError("duplicate key '" + key + "'");
        }
        doc.entries_[key] = value;
    }
    return doc;
}

FlatDoc FlatDoc::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in.is_open()) {
        throw ConfigError("cannot open config file: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse(buffer.str());
}

void FlatDoc::set(const std::string& key, const std::string& value) {
    entries_[key] = value;
}

bool FlatDoc::contains(const std::string& key) const {
    return entries_.count(key) > 0;
}

std::string FlatDoc::serialize() const {
    std::ostringstream out;
    for (const auto& [key, value] : entries_) {
        out << key << " = " << value << "\n";
    }
    return out.str();
}

std::string FlatDoc::get_string(const std::string& key,
                                const std::string& fallback) const {
    consumed_[key] = true;
    const auto it = entries_.find(key);
    return it == entries_.end() ? fallback : it->second;
}

double FlatDoc::get_double(const std::string& key, double fallback) const {
    consumed_[key] = true;
    const auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    return parse_double(key, it->second);
}

int FlatDoc::get_int(const std::string& key, int fallback) const {
    consumed_[key] = true;
    const auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    const double value = parse_double(key, it->second);
    const int rounded = static_cast<int>(std::llround(value));
    if (value != rounded) {
        throw ConfigError(key + ": expected an integer, got '" + it->second +
                          "'");
    }
    return rounded;
}

std::uint64_t FlatDoc::get_uint64(const std::string& key,
                                  std::uint64_t fallback) const {
    consumed_[key] = true;
    const auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    const std::string& text = it->second;
    std::uint64_t value = 0;
    const auto [ptr, ec] =
        std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ConfigError(key + ": expected an unsigned integer, got '" +
                          text + "'");
    }
    return value;
}

bool FlatDoc::get_bool(const std::string& key, bool fallback) const {
    consumed_[key] = true;
    const auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    if (it->second == "true" || it->second == "1") return true;
    if (it->second == "false" || it->second == "0") return false;
    throw ConfigError(key + ": expected true/false, got '" + it->second + "'");
}

std::vector<double> FlatDoc::get_double_list(
    const std::string& key, const std::vector<double>& fallback) const {
    consumed_[key] = true;
    const auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    std::vector<double> values;
    std::istringstream stream(it->second);
    std::string item;
    while (std::getline(stream, item, ',')) {
        const std::string stripped = trim(item);
        if (stripped.empty()) {
            throw ConfigError(key + ": empty list item");
        }
        values.push_back(parse_double(key, stripped));
    }
    if (values.empty()) {
        throw ConfigError(key + ": empty list");
    }
    return values;
}

void FlatDoc::reject_unknown_keys() const {
    std::vector<std::string> unknown;
    for (const auto& [key, value] : entries_) {
        if (!consumed_.count(key)) {
            unknown.push_back(key);
        }
    }
    if (!unknown.empty()) {
        std::string message = "unknown config keys:";
        for (const auto& key : unknown) {
            message += " " + key;
        }
        throw ConfigError(message);
    }
}

double piecewise_linear(const std::vector<double>& values, double x) {
    if (values.empty()) {
        throw std::invalid_argument("piecewise_linear: no values");
    }
    if (values.size() == 1) {
        return values.front();
    }
    const double clamped = std::clamp(x, 0.0, 1.0);
    const double position = clamped * (values.size() - 1);
    const std::size_t lo = std::min<std::size_t>(
        static_cast<std::size_t>(position), values.size() - 2);
    const double frac = position - lo;
    return values[lo] * (1.0 - frac) + values[lo + 1] * frac;
}

namespace {

void validate_common(const ExperimentConfig& config) {
    if (config.preset != "fhn" && config.preset != "scalar") {
        throw ConfigError("problem.preset: must be 'fhn' or 'scalar'");
    }
    if (!(config.horizon > 0.0)) {
        throw ConfigError("run.T: must be positive");
    }
    if (!(config.dt > 0.0)) {
        throw ConfigError("run.dt: must be positive");
    }
    const double steps = config.horizon / config.dt;
    if (std::abs(steps - std::llround(steps)) >
        1e-9 * std::max(1.0, steps)) {
        throw ConfigError("run.dt: dt must divide T");
    }
    if (config.order < 1) {
        throw ConfigError("run.order: must be >= 1");
    }
    if (config.moment_p < 2 || config.moment_p % 2 != 0) {
        throw ConfigError("run.moment: must be an even integer >= 2");
    }
    if (config.paths < 1) {
        throw ConfigError("run.paths: must be >= 1");
    }
    if (config.epsilons.empty()) {
        throw ConfigError("run.epsilons: must not be empty");
    }
    for (std::size_t i = 0; i < config.epsilons.size(); ++i) {
        if (!(config.epsilons[i] > 0.0) || config.epsilons[i] > 1.0) {
            throw ConfigError("run.epsilons: values must lie in (0, 1]");
        }
        if (i > 0 && !(config.epsilons[i] < config.epsilons[i - 1])) {
            throw ConfigError(
                "run.epsilons: values must be strictly decreasing");
        }
    }
    if (!(config.noise_intensity > 0.0)) {
        throw ConfigError("noise.intensity: must be positive");
    }
    if (config.mark_law != "two_point" && config.mark_law != "uniform" &&
        config.mark_law != "double_exponential") {
        throw ConfigError(
            "noise.mark_law: must be two_point, uniform, or "
            "double_exponential");
    }
    if (!(config.mark_scale > 0.0)) {
        throw ConfigError("noise.mark_scale: must be positive");
    }
    if (!(config.q_trace >= 0.0)) {
        throw ConfigError("noise.q_trace: must be >= 0");
    }
    if (config.output_stride < 1) {
        throw ConfigError("output.stride: must be >= 1");
    }
    if (config.threads < 0) {
        throw ConfigError("run.threads: must be >= 0");
    }
}

void validate_fhn(const ExperimentConfig& config) {
    if (config.n_nodes < 3) {
        throw ConfigError("grid.n_nodes: must be >= 3");
    }
    if (!(config.xi > 0.0 && config.xi < 1.0)) {
        throw ConfigError("fhn.xi: must lie in (0, 1)");
    }
    if (!(config.gamma > 0.0)) {
        throw ConfigError("fhn.gamma: must be positive");
    }
    if (!(config.alpha > 0.0)) {
        throw ConfigError("fhn.alpha: must be positive");
    }
    for (double value : config.c_values) {
        if (!(value > 0.0)) {
            throw ConfigError("fhn.c: values must be strictly positive");
        }
    }
    for (double value : config.p_values) {
        if (!(value > 0.0)) {
            throw ConfigError("fhn.p: values must be strictly positive");
        }
    }
    if (config.profile_component < 0 || config.profile_component > 1) {
        throw ConfigError("noise.profile_component: must be 0 or 1");
    }
    if (!config.q_components.empty() && config.q_components.size() != 2) {
        throw ConfigError("noise.q_components: expected two values");
    }
}

void validate_scalar(const ExperimentConfig& config) {
    if (!(config.scalar_rate > 0.0)) {
        throw ConfigError("scalar.rate: must be positive");
    }
    if (config.profile_component != 0) {
        throw ConfigError("noise.profile_component: must be 0");
    }
    if (!config.q_components.empty() && config.q_components.size() != 1) {
        throw ConfigError("noise.q_components: expected one value");
    }
}

}  // namespace

ExperimentConfig load_config(const FlatDoc& doc) {
    ExperimentConfig defaults;
    ExperimentConfig config;
    config.preset = doc.get_string("problem.preset", defaults.preset);

    config.n_nodes = doc.get_int("grid.n_nodes", defaults.n_nodes);
    config.c_values = doc.get_double_list("fhn.c", defaults.c_values);
    config.p_values = doc.get_double_list("fhn.p", defaults.p_values);
    config.gamma = doc.get_double("fhn.gamma", defaults.gamma);
    config.alpha = doc.get_double("fhn.alpha", defaults.alpha);
    config.xi = doc.get_double("fhn.xi", defaults.xi);

    config.scalar_rate = doc.get_double("scalar.rate", defaults.scalar_rate);
    const std::vector<double> scalar_coeffs =
        doc.get_double_list("scalar.coefficients", {});
    if (!scalar_coeffs.empty()) {
        config.scalar_coefficients = scalar_coeffs;
    }

    config.init_scale = doc.get_double("init.scale", defaults.init_scale);

    config.noise_intensity =
        doc.get_double("noise.intensity", defaults.noise_intensity);
    config.mark_law = doc.get_string("noise.mark_law", defaults.mark_law);
    config.mark_scale = doc.get_double("noise.mark_scale", defaults.mark_scale);
    config.profile_component =
        doc.get_int("noise.profile_component", defaults.profile_component);
    config.q_trace = doc.get_double("noise.q_trace", defaults.q_trace);
    config.q_components =
        doc.get_double_list("noise.q_components", defaults.q_components);

    config.horizon = doc.get_double("run.T", defaults.horizon);
    config.dt = doc.get_double("run.dt", defaults.dt);
    config.order = doc.get_int("run.order", defaults.order);
    config.moment_p = doc.get_int("run.moment", defaults.moment_p);
    config.epsilons = doc.get_double_list("run.epsilons", defaults.epsilons);
    config.paths = doc.get_int("run.paths", defaults.paths);
    config.master_seed =
        doc.get_uint64("run.master_seed", defaults.master_seed);
    config.threads = doc.get_int("run.threads", defaults.threads);

    config.output_stride = doc.get_int("output.stride", defaults.output_stride);
    config.dump_paths = doc.get_bool("output.dump_paths", defaults.dump_paths);

    doc.reject_unknown_keys();

    validate_common(config);
    if (config.preset == "fhn") {
        validate_fhn(config);
    } else {
        validate_scalar(config);
    }
    // Snap the horizon onto the step grid so times[last] == T holds exactly.
    const long long steps = std::llround(config.horizon / config.dt);
    config.horizon = static_cast<double>(steps) * config.dt;
    return config;
}

ExperimentConfig load_config_text(const std::string& text) {
    return load_config(FlatDoc::parse(text));
}

ExperimentConfig load_config_file(const std::string& path) {
    return load_config(FlatDoc::load_file(path));
}

ExperimentConfig fhn_preset() { return load_config(FlatDoc()); }

ExperimentConfig scalar_preset() {
    FlatDoc doc;
    doc.set("problem.preset", "scalar");
    doc.set("run.T", "1.0");
    return load_config(doc);
}

namespace {

std::string format_double(double value) {
    std::ostringstream out;
    out.precision(17);
    out << value;
    return out.str();
}

std::string format_list(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) out += ",";
        out += format_double(values[i]);
    }
    return out;
}

}  // namespace

FlatDoc ExperimentConfig::resolved_document() const {
    FlatDoc doc;
    doc.set("problem.preset", preset);
    if (preset == "fhn") {
        doc.set("grid.n_nodes", std::to_string(n_nodes));
        doc.set("fhn.c", format_list(c_values));
        doc.set("fhn.p", format_list(p_values));
        doc.set("fhn.gamma", format_double(gamma));
        doc.set("fhn.alpha", format_double(alpha));
        doc.set("fhn.xi", format_double(xi));
    } else {
        doc.set("scalar.rate", format_double(scalar_rate));
        if (scalar_coefficients) {
            doc.set("scalar.coefficients", format_list(*scalar_coefficients));
        }
    }
    doc.set("init.scale", format_double(init_scale));
    doc.set("noise.intensity", format_double(noise_intensity));
    doc.set("noise.mark_law", mark_law);
    doc.set("noise.mark_scale", format_double(mark_scale));
    doc.set("noise.profile_component", std::to_string(profile_component));
    doc.set("noise.q_trace", format_double(q_trace));
    if (!q_components.empty()) {
        doc.set("noise.q_components", format_list(q_components));
    }
    doc.set("run.T", format_double(horizon));
    doc.set("run.dt", format_double(dt));
    doc.set("run.order", std::to_string(order));
    doc.set("run.moment", std::to_string(moment_p));
    doc.set("run.epsilons", format_list(epsilons));
    doc.set("run.paths", std::to_string(paths));
    doc.set("run.master_seed", std::to_string(master_seed));
    doc.set("run.threads", std::to_string(threads));
    doc.set("output.stride", std::to_string(output_stride));
    doc.set("output.dump_paths", dump_paths ? "true" : "false");
    return doc;
}

}  // namespace levyexp
