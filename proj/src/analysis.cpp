#include "levyexp/analysis.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace levyexp {

Trajectory remainder_at_order(const Trajectory& u_eps,
                              const ExpansionSet& set, double epsilon,
                              int order) {
    if (order < 1 || order > set.order) {
        throw std::invalid_argument("remainder: order out of range");
    }
    if (u_eps.states.rows() != set.phi.states.rows() ||
        u_eps.steps() != set.phi.steps() || u_eps.dt != set.phi.dt) {
        throw std::invalid_argument("remainder: grid mismatch");
    }
    Trajectory r = u_eps;
    r.states -= set.phi.states;
    double eps_power = 1.0;
    for (int k = 1; k <= order; ++k) {
        eps_power *= epsilon;
        r.states -= eps_power * set.correction(k).states;
    }
    return r;
}

Trajectory remainder(const Trajectory& u_eps, const ExpansionSet& set,
                     double epsilon) {
    return remainder_at_order(u_eps, set, epsilon, set.order);
}

double sup_weighted_norm(const SpaceLayout& layout, const Trajectory& traj) {
    double best = 0.0;
    for (int m = 0; m <= traj.steps(); ++m) {
        best = std::max(best, layout.norm(traj.state(m)));
    }
    return best;
}

MeanEstimate sup_moment(std::span<const double> sup_norms, int p) {
    if (sup_norms.size() < 2) {
        throw std::invalid_argument("sup_moment: need at least two paths");
    }
    if (p < 1) {
        throw std::invalid_argument("sup_moment: p must be >= 1");
    }
    std::vector<double> powered(sup_norms.size());
    for (std::size_t i = 0; i < sup_norms.size(); ++i) {
        powered[i] = std::pow(sup_norms[i], p);
    }
    return mean_with_error(powered);
}

OrderFitResult fit_order(std::span<const double> epsilons,
                         std::span<const double> values,
                         std::span<const double> std_errors) {
    if (epsilons.size() != values.size()) {
        throw std::invalid_argument("fit_order: size mismatch");
    }
    const bool weighted = !std_errors.empty();
    if (weighted && std_errors.size() != values.size()) {
        throw std::invalid_argument("fit_order: std error size mismatch");
    }
    OrderFitResult result;
    std::vector<double> log_eps, log_val, weights;
    for (std::size_t i = 0; i < epsilons.size(); ++i) {
        if (!(values[i] > 0.0)) {
            result.warnings.push_back(
                "dropped epsilon=" + std::to_string(epsilons[i]) +
                ": non-positive moment estimate");
            continue;
        }
        log_eps.push_back(std::log(epsilons[i]));
        log_val.push_back(std::log(values[i]));
        if (weighted) {
            // Delta method: se(log v) = se(v)/v; fall back to unit weight
            // for a vanishing standard error.
            const double se_log = std_errors[i] / values[i];
            weights.push_back(se_log > 0.0 ? 1.0 / (se_log * se_log) : 1.0);
        }
    }
    if (log_eps.size() < 3) {
        throw std::invalid_argument(
            "fit_order: fewer than three usable epsilon points");
    }
    const LineFit fit = weighted
                            ? fit_line_weighted(log_eps, log_val, weights)
                            : fit_line(log_eps, log_val);
    result.slope = fit.slope;
    result.intercept = fit.intercept;
    result.r_squared = fit.r_squared;
    result.points_used = static_cast<int>(log_eps.size());
    return result;
}

Trajectory fd_correction(const OperatorBundle& bundle, const PolynomialMap& f,
                         const NoiseCovariance& q, const Vector& u0,
                         const LevyPath& path, int k, double eps0) {
    if (k != 1 && k != 2) {
        throw std::invalid_argument("fd_correction: k must be 1 or 2");
    }
    if (!(eps0 > 0.0)) {
        throw std::invalid_argument("fd_correction: eps0 must be positive");
    }
    const Trajectory u_eps = solve_sde(bundle, f, q, eps0, u0, path);
    const Trajectory phi = solve_deterministic(bundle, f, u0, path.horizon);
    Trajectory probe = u_eps;
    probe.states -= phi.states;
    if (k == 1) {
        probe.states /= eps0;
        return probe;
    }
    const Trajectory u1 = solve_first_correction(bundle, f, q, phi, path);
    probe.states -= eps0 * u1.states;
    probe.states /= eps0 * eps0;
    return probe;
}

namespace {

void validate_study_config(const OrderStudyConfig& config) {
    if (config.epsilons.size() < 3) {
        throw std::invalid_argument(
            "order study: need at least three epsilon values");
    }
    for (std::size_t i = 0; i < config.epsilons.size(); ++i) {
        if (!(config.epsilons[i] > 0.0) || config.epsilons[i] > 1.0) {
            throw std::invalid_argument(
                "order study: epsilons must lie in (0, 1]");
        }
        if (i > 0 && !(config.epsilons[i] < config.epsilons[i - 1])) {
            throw std::invalid_argument(
                "order study: epsilons must be strictly decreasing");
        }
    }
    if (config.order < 1) {
        throw std::invalid_argument("order study: order must be >= 1");
    }
    if (config.moment_p < 2 || config.moment_p % 2 != 0) {
        throw std::invalid_argument(
            "order study: moment exponent must be an even integer >= 2");
    }
    if (config.paths < 2) {
        throw std::invalid_argument("order study: need at least two paths");
    }
}

}  // namespace

OrderStudyResult run_order_study(const OperatorBundle& bundle,
                                 const PolynomialMap& f,
                                 const NoiseCovariance& q,
                                 const JumpMeasureSpec& noise,
                                 const Vector& u0,
                                 const OrderStudyConfig& config) {
    validate_study_config(config);
    const int n_eps = static_cast<int>(config.epsilons.size());
    const int n_paths = config.paths;
    const int order = config.order;

    OrderStudyResult result;
    result.config = config;
    result.sups.assign(
        order, std::vector<std::vector<double>>(
                   n_eps, std::vector<double>(n_paths, 0.0)));

    // The deterministic base is path independent; the corrections are not.
    const Trajectory phi =
        solve_deterministic(bundle, f, u0, config.horizon);

    std::atomic<int> next_path{0};
    std::atomic<bool> failed{false};
    std::string failure_message;
    std::mutex failure_mutex;

    auto worker = [&]() {
        try {
            while (true) {
                const int path_index = next_path.fetch_add(1);
                if (path_index >= n_paths || failed.load()) break;
                SplitMix64 rng(
                    derive_stream_seed(config.master_seed, path_index));
                const LevyPath path =
                    sample_path(noise, config.horizon, rng);

                ExpansionSet set;
                set.order = order;
                set.phi = phi;
                set.corrections.push_back(
                    solve_first_correction(bundle, f, q, phi, path));
                for (int k = 2; k <= order; ++k) {
                    set.corrections.push_back(solve_correction(
                        bundle, f, k, phi,
                        std::span<const Trajectory>(set.corrections.data(),
                                                    k - 1)));
                }

                for (int e = 0; e < n_eps; ++e) {
                    const double eps = config.epsilons[e];
                    const Trajectory u_eps =
                        solve_sde(bundle, f, q, eps, u0, path);
                    for (int k = 1; k <= order; ++k) {
                        const Trajectory rem =
                            remainder_at_order(u_eps, set, eps, k);
                        result.sups[k - 1][e][path_index] =
                            sup_weighted_norm(bundle.layout(), rem);
                    }
                }
            }
        } catch (const std::exception& exc) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            failed.store(true);
            if (failure_message.empty()) failure_message = exc.what();
        }
    };

    const int n_threads = std::max(1, config.threads);
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (int t = 0; t < n_threads; ++t) {
            pool.emplace_back(worker);
        }
        for (auto& thread : pool) {
            thread.join();
        }
    }
    if (failed.load()) {
        throw std::runtime_error("order study failed: " + failure_message);
    }

    for (int k = 1; k <= order; ++k) {
        OrderStudyBlock block;
        block.order = k;
        std::vector<double> medians(n_eps), moment_means(n_eps),
            moment_ses(n_eps);
        for (int e = 0; e < n_eps; ++e) {
            const auto& sups = result.sups[k - 1][e];
            OrderStudyRow row;
            row.epsilon = config.epsilons[e];
            row.median_sup = median(sups);
            row.q25 = quantile(sups, 0.25);
            row.q75 = quantile(sups, 0.75);
            const MeanEstimate moment = sup_moment(sups, config.moment_p);
            row.moment_estimate = moment.mean;
            row.moment_std_error = moment.std_error;
            block.rows.push_back(row);
            medians[e] = row.median_sup;
            moment_means[e] = row.moment_estimate;
            moment_ses[e] = row.moment_std_error;
        }
        block.sup_fit = fit_order(config.epsilons, medians);
        block.moment_fit =
            fit_order(config.epsilons, moment_means, moment_ses);

        // Per-path monotonicity of sup|R| along the decreasing epsilon grid.
        int violations = 0;
        for (int i = 0; i < n_paths; ++i) {
            for (int e = 1; e < n_eps; ++e) {
                if (result.sups[k - 1][e][i] >
                    result.sups[k - 1][e - 1][i]) {
                    ++violations;
                }
            }
        }
        block.shrink_violation_fraction =
            static_cast<double>(violations) /
            static_cast<double>(n_paths * (n_eps - 1));
        result.blocks.push_back(std::move(block));
    }
    return result;
}

}  // namespace levyexp
