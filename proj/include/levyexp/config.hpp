#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace levyexp {

class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& message)
        : std::runtime_error(message) {}
};

/// Flat `key = value` text document: one assignment per line, `#` comments.
/// Keys are dotted paths. Parsing is strict about duplicates; consumers are
/// strict about unknown keys.
class FlatDoc {
  public:
    FlatDoc() = default;

    static FlatDoc parse(const std::string& text);
    static FlatDoc load_file(const std::string& path);

    void set(const std::string& key, const std::string& value);
    bool contains(const std::string& key) const;

    std::string serialize() const;
    const std::map<std::string, std::string>& entries() const {
        return entries_;
    }

    /// Typed getters; each records the key as consumed.
    std::string get_string(const std::string& key,
                           const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    std::uint64_t get_uint64(const std::string& key,
                             std::uint64_t fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::vector<double> get_double_list(
        const std::string& key, const std::vector<double>& fallback) const;

    /// Throws listing every key that no getter touched.
    void reject_unknown_keys() const;

  private:
    std::map<std::string, std::string> entries_;
    mutable std::map<std::string, bool> consumed_;
};

/// Fully resolved experiment description. Defaults give the FitzHugh-Nagumo
/// preset used throughout the tests.
struct ExperimentConfig {
    std::string preset = "fhn";  // "fhn" or "scalar"

    // FitzHugh-Nagumo problem.
    int n_nodes = 32;
    std::vector<double> c_values = {1.0};  // breakpoints over [0,1]
    std::vector<double> p_values = {1.0};
    double gamma = 1.0;
    double alpha = 1.0;
    double xi = 0.5;

    // Scalar problem (single node): dv = -rate*v + g(v) dt + noise.
    double scalar_rate = 1.0;
    std::optional<std::vector<double>> scalar_coefficients;

    double init_scale = 1.0;

    // Noise.
    double noise_intensity = 5.0;
    std::string mark_law = "two_point";
    double mark_scale = 1.0;
    int profile_component = 0;
    double q_trace = 1.0;
    std::vector<double> q_components;  // empty = uniform over components

    // Run parameters.
    double horizon = 0.5;
    double dt = 1e-3;
    int order = 1;
    int moment_p = 2;
    std::vector<double> epsilons = {0.2, 0.1, 0.05, 0.025};
    int paths = 100;
    std::uint64_t master_seed = 42;
    int threads = 0;  // 0 = hardware concurrency

    // Output.
    int output_stride = 1;
    bool dump_paths = false;

    /// Serialized form with every value resolved, for embedding in outputs.
    FlatDoc resolved_document() const;
};

/// Parse + validate a document against the schema. Unknown keys and
/// constraint violations raise ConfigError naming the offending key.
ExperimentConfig load_config(const FlatDoc& doc);
ExperimentConfig load_config_text(const std::string& text);
ExperimentConfig load_config_file(const std::string& path);

ExperimentConfig fhn_preset();
ExperimentConfig scalar_preset();

/// Piecewise-linear interpolation of breakpoint values over [0,1].
double piecewise_linear(const std::vector<double>& values, double x);

}  // namespace levyexp
