#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "levyexp/io.hpp"
#include "levyexp/problem.hpp"

namespace fs = std::filesystem;
using namespace levyexp;

namespace {

struct CommonOptions {
    std::string config_path;
    std::string out_dir = "out";
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
};

void add_common_options(CLI::App* cmd, CommonOptions* options) {
    cmd->add_option("--config", options->config_path,
                    "Flat-key config file (defaults to the FHN preset)");
    cmd->add_option("--out", options->out_dir, "Output directory");
    cmd->add_option("--seed", options->seed, "Override run.master_seed");
    cmd->add_option("--threads", options->threads,
                    "Worker threads (0 = hardware)");
}

ExperimentConfig resolve_config(const CommonOptions& options) {
    ExperimentConfig config = options.config_path.empty()
                                  ? fhn_preset()
                                  : load_config_file(options.config_path);
    if (options.seed) {
        config.master_seed = *options.seed;
    }
    if (options.threads) {
        config.threads = *options.threads;
    }
    if (config.threads == 0) {
        config.threads =
            std::max(1u, std::thread::hardware_concurrency());
    }
    return config;
}

void print_rates(const ProblemSetup& setup) {
    const ValidationReport report = rate_report(setup);
    std::cout << "omega = " << report.omega << ", eta = " << report.eta
              << ", omega - eta = " << report.gap << "\n";
    for (const auto& warning : report.warnings) {
        std::cout << "warning: " << warning << "\n";
    }
}

void dump_paths_if_requested(const ProblemSetup& setup, const fs::path& out) {
    if (!setup.config.dump_paths) return;
    for (int i = 0; i < setup.config.paths; ++i) {
        SplitMix64 rng(derive_stream_seed(setup.config.master_seed, i));
        const LevyPath path =
            sample_path(setup.noise, setup.config.horizon, rng);
        write_levy_path_csv(out / ("path_" + std::to_string(i) + ".csv"),
                            *setup.layout, path);
    }
}

int run_simulate(const CommonOptions& options) {
    const ProblemSetup setup = assemble_problem(resolve_config(options));
    print_rates(setup);
    const fs::path out(options.out_dir);
    const auto& cfg = setup.config;

    const Trajectory phi = solve_deterministic(*setup.bundle, setup.drift,
                                               setup.u0, cfg.horizon);
    write_trajectory_csv(out / "phi.csv", *setup.layout, phi,
                         cfg.output_stride);
    for (int i = 0; i < cfg.paths; ++i) {
        SplitMix64 rng(derive_stream_seed(cfg.master_seed, i));
        const LevyPath path = sample_path(setup.noise, cfg.horizon, rng);
        for (std::size_t e = 0; e < cfg.epsilons.size(); ++e) {
            const Trajectory u = solve_sde(*setup.bundle, setup.drift,
                                           setup.covariance, cfg.epsilons[e],
                                           setup.u0, path);
            write_trajectory_csv(out / ("u_eps" + std::to_string(e) +
                                        "_path" + std::to_string(i) + ".csv"),
                                 *setup.layout, u, cfg.output_stride);
        }
    }
    dump_paths_if_requested(setup, out);
    write_run_summary_json(out / "run_summary.json", setup, "simulate");
    std::cout << "simulate: wrote trajectories for " << cfg.paths
              << " path(s) to " << out << "\n";
    return 0;
}

int run_expand(const CommonOptions& options) {
    const ProblemSetup setup = assemble_problem(resolve_config(options));
    print_rates(setup);
    const fs::path out(options.out_dir);
    const auto& cfg = setup.config;

    for (int i = 0; i < cfg.paths; ++i) {
        SplitMix64 rng(derive_stream_seed(cfg.master_seed, i));
        const LevyPath path = sample_path(setup.noise, cfg.horizon, rng);
        const ExpansionSet set = expand(*setup.bundle, setup.drift,
                                        setup.covariance, setup.u0, path,
                                        cfg.order);
        if (i == 0) {
            write_trajectory_csv(out / "phi.csv", *setup.layout, set.phi,
                                 cfg.output_stride);
        }
        for (int k = 1; k <= cfg.order; ++k) {
            write_trajectory_csv(out / ("u" + std::to_string(k) + "_path" +
                                        std::to_string(i) + ".csv"),
                                 *setup.layout, set.correction(k),
                                 cfg.output_stride);
        }
    }
    dump_paths_if_requested(setup, out);
    write_run_summary_json(out / "run_summary.json", setup, "expand");
    std::cout << "expand: wrote expansion terms up to order " << cfg.order
              << " for " << cfg.paths << " path(s) to " << out << "\n";
    return 0;
}

int run_order_study_command(const CommonOptions& options) {
    const ProblemSetup setup = assemble_problem(resolve_config(options));
    print_rates(setup);
    const fs::path out(options.out_dir);
    const auto& cfg = setup.config;

    OrderStudyConfig study;
    study.epsilons = cfg.epsilons;
    study.order = cfg.order;
    study.moment_p = cfg.moment_p;
    study.paths = cfg.paths;
    study.horizon = cfg.horizon;
    study.master_seed = cfg.master_seed;
    study.threads = cfg.threads;

    const OrderStudyResult result =
        run_order_study(*setup.bundle, setup.drift, setup.covariance,
                        setup.noise, setup.u0, study);

    write_order_study_csv(out / "order_study.csv", result);
    write_run_summary_json(out / "run_summary.json", setup, "order-study",
                           &result);
    for (const auto& block : result.blocks) {
        std::cout << "order " << block.order
                  << ": sup-norm slope = " << block.sup_fit.slope
                  << " (target " << block.order + 1
                  << "), r^2 = " << block.sup_fit.r_squared
                  << "; moment slope = " << block.moment_fit.slope
                  << " (target " << study.moment_p * (block.order + 1) << ")\n";
    }
    std::cout << "order-study: results in " << out << "\n";
    return 0;
}

int run_validate(const CommonOptions& options) {
    const ProblemSetup setup = assemble_problem(resolve_config(options));
    const ValidationReport report =
        run_validation(setup, setup.config.master_seed);
    std::cout << "omega = " << report.omega << ", eta = " << report.eta
              << ", omega - eta = " << report.gap << "\n";
    for (const auto& warning : report.warnings) {
        std::cout << "warning: " << warning << "\n";
    }
    for (const auto& check : report.checks) {
        std::cout << (check.passed ? "PASS " : "FAIL ") << check.name << " ("
                  << check.detail << ")\n";
    }
    const fs::path out(options.out_dir);
    write_run_summary_json(out / "run_summary.json", setup, "validate",
                           nullptr, &report);
    return report.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Small-noise expansion of jump-driven dissipative evolution "
        "equations"};
    app.require_subcommand(1);

    CommonOptions simulate_opts, expand_opts, study_opts, validate_opts;
    CLI::App* simulate = app.add_subcommand(
        "simulate", "Solve the deterministic base and full SDE trajectories");
    add_common_options(simulate, &simulate_opts);
    CLI::App* expand_cmd = app.add_subcommand(
        "expand", "Compute the expansion terms on sampled noise paths");
    add_common_options(expand_cmd, &expand_opts);
    CLI::App* study = app.add_subcommand(
        "order-study",
        "Monte Carlo measurement of the remainder order in epsilon");
    add_common_options(study, &study_opts);
    CLI::App* validate = app.add_subcommand(
        "validate", "Run the property suites on the configured problem");
    add_common_options(validate, &validate_opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) return run_simulate(simulate_opts);
        if (expand_cmd->parsed()) return run_expand(expand_opts);
        if (study->parsed()) return run_order_study_command(study_opts);
        if (validate->parsed()) return run_validate(validate_opts);
    } catch (const std::exception& exc) {
        std::cerr << "error: " << exc.what() << "\n";
        return 2;
    }
    return 0;
}
