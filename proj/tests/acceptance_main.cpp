// Acceptance runner: executes each numbered criterion at its stated
// tolerance and prints one PASS/FAIL line per criterion. Exits nonzero if
// any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>
#include <vector>

#include "levyexp/problem.hpp"

using namespace levyexp;

namespace {

int failures = 0;

void report(int criterion, const char* name, bool passed,
            const std::string& detail) {
    std::printf("[%s] criterion %d (%s): %s\n", passed ? "PASS" : "FAIL",
                criterion, name, detail.c_str());
    if (!passed) ++failures;
}

std::string fmt(const char* pattern, double a, double b = 0.0,
                double c = 0.0) {
    char buffer[256];
    std::snprintf(buffer, sizeof(buffer), pattern, a, b, c);
    return buffer;
}

double seconds_since(
    const std::chrono::steady_clock::time_point& start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
}

Vector random_state(const SpaceLayout& layout, SplitMix64& rng,
                    double amplitude) {
    Vector x(layout.dim());
    for (int i = 0; i < layout.dim(); ++i) {
        x(i) = amplitude * (2.0 * rng.uniform01() - 1.0);
    }
    return x;
}

// Criteria 1 and 2: the Monte Carlo order measurement on the FHN preset.
void criteria_remainder_order() {
    const auto start = std::chrono::steady_clock::now();
    const ProblemSetup setup = assemble_problem(fhn_preset());

    OrderStudyConfig config;
    config.epsilons = {0.2, 0.1, 0.05, 0.025};
    config.order = 2;  // yields both R_1 and R_2 on the shared runs
    config.moment_p = 2;
    config.paths = 100;
    config.horizon = setup.config.horizon;
    config.master_seed = setup.config.master_seed;
    config.threads = 4;

    const OrderStudyResult result =
        run_order_study(*setup.bundle, setup.drift, setup.covariance,
                        setup.noise, setup.u0, config);
    const double elapsed = seconds_since(start);

    const OrderFitResult& first = result.block(1).sup_fit;
    report(1, "remainder order n=1",
           first.slope >= 1.8 && first.r_squared >= 0.98 && elapsed <= 300.0,
           fmt("slope %.4f (>= 1.8), r^2 %.6f (>= 0.98), %.1f s", first.slope,
               first.r_squared, elapsed));

    const OrderFitResult& second = result.block(2).sup_fit;
    report(1, "remainder order n=2", second.slope >= 2.7,
           fmt("slope %.4f (>= 2.7, target 3)", second.slope));

    const OrderFitResult& moment = result.block(1).moment_fit;
    report(2, "second-moment exponent n=1", moment.slope >= 3.6,
           fmt("weighted slope %.4f (>= 3.6, target 4)", moment.slope));

    // Supporting invariants measured on the same acceptance run.
    const double shrink = result.block(1).shrink_violation_fraction;
    report(1, "per-path monotone shrinkage", shrink <= 0.05,
           fmt("violation fraction %.4f (<= 0.05)", shrink));

    double max_delta = 0.0;
    {
        std::vector<double> medians;
        for (const auto& row : result.block(1).rows) {
            medians.push_back(row.median_sup);
        }
        for (std::size_t drop = 0; drop < config.epsilons.size(); ++drop) {
            std::vector<double> eps, med;
            for (std::size_t i = 0; i < config.epsilons.size(); ++i) {
                if (i == drop) continue;
                eps.push_back(config.epsilons[i]);
                med.push_back(medians[i]);
            }
            const OrderFitResult partial = fit_order(eps, med);
            max_delta = std::max(max_delta,
                                 std::abs(partial.slope - first.slope));
        }
    }
    report(1, "leave-one-out slope stability", max_delta < 0.3,
           fmt("max slope change %.4f (< 0.3)", max_delta));
}

// Criterion 3: divided-difference oracle equivalence on the scalar problem.
void criterion_oracle_equivalence() {
    const auto start = std::chrono::steady_clock::now();
    const ProblemSetup setup = assemble_problem(scalar_preset());
    LevyPath path;
    for (std::uint64_t index = 0;; ++index) {
        SplitMix64 rng(derive_stream_seed(setup.config.master_seed, index));
        path = sample_path(setup.noise, setup.config.horizon, rng);
        if (!path.jump_times.empty()) break;
    }
    const ExpansionSet set = expand(*setup.bundle, setup.drift,
                                    setup.covariance, setup.u0, path, 2);

    const Trajectory probe1 = fd_correction(
        *setup.bundle, setup.drift, setup.covariance, setup.u0, path, 1,
        1e-4);
    Trajectory diff1 = probe1;
    diff1.states -= set.correction(1).states;
    const double rel1 = sup_weighted_norm(*setup.layout, diff1) /
                        sup_weighted_norm(*setup.layout, set.correction(1));

    const Trajectory probe2 = fd_correction(
        *setup.bundle, setup.drift, setup.covariance, setup.u0, path, 2,
        1e-3);
    Trajectory diff2 = probe2;
    diff2.states -= set.correction(2).states;
    const double rel2 = sup_weighted_norm(*setup.layout, diff2) /
                        sup_weighted_norm(*setup.layout, set.correction(2));
    const double elapsed = seconds_since(start);

    report(3, "first correction vs (u^eps - phi)/eps",
           rel1 <= 1e-3 && elapsed <= 5.0,
           fmt("relative sup error %.2e (<= 1e-3), %.2f s", rel1, elapsed));
    report(3, "second correction vs divided difference", rel2 <= 5e-3,
           fmt("relative sup error %.2e (<= 5e-3)", rel2));
}

// Criterion 4: dissipativity of the drift pair at the stated tolerances.
void criterion_dissipativity() {
    const auto start = std::chrono::steady_clock::now();
    const ProblemSetup setup = assemble_problem(fhn_preset());
    const SpaceLayout& layout = *setup.layout;
    const double xi = setup.config.xi;
    const double eta = (xi * xi - xi + 1.0) / 3.0;

    SplitMix64 rng(2026);
    double worst = -1e300;
    for (int trial = 0; trial < 1000; ++trial) {
        const Vector u = random_state(layout, rng, 2.0);
        const Vector v = random_state(layout, rng, 2.0);
        const Vector du = u - v;
        worst = std::max(
            worst, layout.inner(setup.drift.eval(u) - setup.drift.eval(v) -
                                    eta * du,
                                du));
    }
    const double omega = setup.omega();
    double worst_ratio = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const Vector x = random_state(layout, rng, 1.0);
        worst_ratio =
            std::max(worst_ratio, layout.norm(setup.bundle->step() * x) -
                                      std::exp(-omega * setup.bundle->dt()) *
                                          layout.norm(x));
    }
    const double elapsed = seconds_since(start);
    report(4, "one-sided polynomial dissipativity",
           worst <= 1e-10 && elapsed <= 5.0,
           fmt("max inner product %.2e (<= 1e-10), %.2f s", worst, elapsed));
    report(4, "weighted semigroup contraction", worst_ratio <= 1e-9,
           fmt("max excess %.2e (<= 1e-9)", worst_ratio));
}

// Criterion 5: deterministic decay at the Gronwall-derived exponent.
void criterion_deterministic_decay() {
    const ProblemSetup setup = assemble_problem(fhn_preset());
    const double gap = setup.gap();
    const Trajectory phi = solve_deterministic(
        *setup.bundle, setup.drift, setup.u0, setup.config.horizon);
    const double initial = setup.layout->norm(setup.u0);
    bool ok = true;
    double worst_excess = -1e300;
    double measured_rate = 0.0;
    for (int m = 0; m <= phi.steps(); ++m) {
        const double norm = setup.layout->norm(phi.state(m));
        const double bound = std::exp(-gap * phi.times[m]) * initial + 1e-8;
        worst_excess = std::max(worst_excess, norm - bound);
        if (norm > bound) ok = false;
    }
    const double final_norm = setup.layout->norm(phi.final_state());
    if (final_norm > 0.0 && initial > 0.0) {
        measured_rate =
            -std::log(final_norm / initial) / setup.config.horizon;
    }
    report(5, "deterministic decay exponent", ok,
           fmt("max excess over e^{-(omega-eta)t} bound %.2e; measured rate "
               "%.3f (paper states %.3f)",
               worst_excess, measured_rate, 2.0 * gap));
}

// Criterion 6: polynomial Taylor exactness and the remainder exponent.
void criterion_taylor() {
    const PolynomialMap f = PolynomialMap::fhn_cubic(0.5, 2);
    SplitMix64 rng(99);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        Vector w(16), h(16);
        for (int i = 0; i < 16; ++i) {
            w(i) = 2.0 * rng.uniform01() - 1.0;
            h(i) = 2.0 * rng.uniform01() - 1.0;
        }
        const Vector direct = f.eval(w + h);
        const Vector expanded = f.taylor_eval(w, h, 3);
        worst = std::max(worst, (direct - expanded).norm() /
                                    std::max(1.0, direct.norm()));
    }
    report(6, "taylor exactness at the degree", worst <= 1e-12,
           fmt("max relative defect %.2e (<= 1e-12)", worst));

    Vector w(16), h(16);
    for (int i = 0; i < 16; ++i) {
        w(i) = 2.0 * rng.uniform01() - 1.0;
        h(i) = 2.0 * rng.uniform01() - 1.0;
    }
    std::vector<double> log_scale, log_rem;
    for (int k = 1; k <= 10; ++k) {
        const double s = std::ldexp(1.0, -k);
        const Vector rem = f.eval(w + s * h) - f.taylor_eval(w, s * h, 2);
        log_scale.push_back(std::log(s));
        log_rem.push_back(std::log(rem.norm()));
    }
    const LineFit fit = fit_line(log_scale, log_rem);
    report(6, "order-2 remainder scales as |h|^3",
           std::abs(fit.slope - 3.0) <= 0.05,
           fmt("log-log slope %.4f (3 +- 0.05)", fit.slope));
}

// Criterion 7: composition combinatorics against brute force.
void criterion_compositions() {
    bool counts_ok = true;
    std::string detail = "counts";
    for (int k = 2; k <= 8; ++k) {
        std::set<std::vector<int>> brute;
        for (unsigned mask = 0; mask < (1u << (k - 1)); ++mask) {
            std::vector<int> parts;
            int last = 0;
            for (int cut = 1; cut < k; ++cut) {
                if (mask & (1u << (cut - 1))) {
                    parts.push_back(cut - last);
                    last = cut;
                }
            }
            parts.push_back(k - last);
            if (parts.size() >= 2) brute.insert(parts);
        }
        const CompositionTable table = enumerate_compositions(k);
        std::set<std::vector<int>> ours;
        for (const auto& entry : table.entries) ours.insert(entry.parts);
        if (table.entries.size() != brute.size() || ours != brute) {
            counts_ok = false;
        }
        detail += " " + std::to_string(table.entries.size());
    }
    report(7, "composition counts 1,3,7,...,127", counts_ok, detail);

    const PolynomialMap f = PolynomialMap::fhn_cubic(0.5, 2);
    SplitMix64 rng(55);
    double worst = 0.0;
    const CompositionTable table = enumerate_compositions(2);
    for (int trial = 0; trial < 50; ++trial) {
        Vector phi(8), u1(8);
        for (int i = 0; i < 8; ++i) {
            phi(i) = 2.0 * rng.uniform01() - 1.0;
            u1(i) = 2.0 * rng.uniform01() - 1.0;
        }
        const Vector states[] = {u1};
        const Vector forcing = taylor_forcing(f, table, phi, states);
        for (int i = 0; i < 4; ++i) {
            const double symbolic =
                0.5 * f.derivative_scalar(0, 2, phi(i)) * u1(i) * u1(i);
            worst = std::max(worst, std::abs(forcing(i) - symbolic));
        }
    }
    report(7, "order-2 forcing matches the symbolic formula", worst <= 1e-12,
           fmt("max defect %.2e (<= 1e-12)", worst));
}

// Criterion 8: compound Poisson moment calibration.
void criterion_levy_moments() {
    const auto start = std::chrono::steady_clock::now();
    const ProblemSetup setup = assemble_problem(fhn_preset());
    const double target =
        jump_measure_moment(setup.noise, 2);  // lambda * a^2 = 5
    const int paths = 10000;
    std::vector<double> squared(paths), projected(paths);
    const Vector profile =
        setup.noise.embedding.modes().front().direction.values;
    for (int i = 0; i < paths; ++i) {
        SplitMix64 rng(derive_stream_seed(777, i));
        const LevyPath path = sample_path(setup.noise, 1.0, rng);
        const Vector value = path.value_at(1.0);
        const double norm = setup.layout->norm(value);
        squared[i] = norm * norm;
        projected[i] = setup.layout->inner(value, profile);
    }
    const MeanEstimate second = mean_with_error(squared);
    const MeanEstimate first = mean_with_error(projected);
    const double elapsed = seconds_since(start);
    report(8, "second moment matches lambda a^2",
           std::abs(second.mean - target) <= 4.0 * second.std_error &&
               elapsed <= 10.0,
           fmt("estimate %.4f vs 5 (|diff| <= 4 se = %.4f), %.2f s",
               second.mean, 4.0 * second.std_error, elapsed));
    report(8, "mean is zero", std::abs(first.mean) <= 4.0 * first.std_error,
           fmt("estimate %.2e (|.| <= 4 se = %.2e)", first.mean,
               4.0 * first.std_error));
}

// Criterion 9: coupling exactness of the shared-scheme remainders.
void criterion_coupling() {
    const ProblemSetup setup = assemble_problem(fhn_preset());
    LevyPath path;
    for (std::uint64_t index = 0;; ++index) {
        SplitMix64 rng(derive_stream_seed(setup.config.master_seed, index));
        path = sample_path(setup.noise, setup.config.horizon, rng);
        if (!path.jump_times.empty()) break;
    }
    const ExpansionSet set = expand(*setup.bundle, setup.drift,
                                    setup.covariance, setup.u0, path, 1);
    const Trajectory u_zero = solve_sde(
        *setup.bundle, setup.drift, setup.covariance, 0.0, setup.u0, path);
    const Trajectory rem_zero = remainder(u_zero, set, 0.0);
    const bool identically_zero = (rem_zero.states.array() == 0.0).all();
    report(9, "remainder at eps=0 is identically zero", identically_zero,
           identically_zero ? "all entries exactly 0" : "nonzero entries");

    Vector slope(2);
    slope << 0.0, -0.4;
    const PolynomialMap linear({slope, Vector()});
    const ExpansionSet linear_set = expand(
        *setup.bundle, linear, setup.covariance, setup.u0, path, 1);
    const Trajectory u_eps = solve_sde(*setup.bundle, linear,
                                       setup.covariance, 0.25, setup.u0,
                                       path);
    const double sup = sup_weighted_norm(
        *setup.layout, remainder(u_eps, linear_set, 0.25));
    report(9, "linear drift remainder is rounding only", sup <= 1e-10,
           fmt("sup %.2e (<= 1e-10)", sup));
}

}  // namespace

int main() {
    criteria_remainder_order();
    criterion_oracle_equivalence();
    criterion_dissipativity();
    criterion_deterministic_decay();
    criterion_taylor();
    criterion_compositions();
    criterion_levy_moments();
    criterion_coupling();
    if (failures > 0) {
        std::printf("%d acceptance criterion check(s) failed\n", failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
