#include "levyexp/problem.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace levyexp {

namespace {

Vector fhn_initial_state(const SpaceLayout& layout, const SpatialGrid& grid,
                         double scale) {
    Vector u0(layout.dim());
    const int n = grid.n_nodes;
    for (int i = 0; i < n; ++i) {
        const double x = grid.node(i);
        u0(i) = scale * (0.3 * std::cos(M_PI * x) + 0.1);
        u0(n + i) = scale * 0.2 * x * (1.0 - x);
    }
    return u0;
}

Field constant_component_profile(const LayoutPtr& layout, int component) {
    Vector direction = Vector::Zero(layout->dim());
    layout->component(direction, component).setConstant(1.0);
    return Field(layout, std::move(direction));
}

NoiseCovariance make_covariance(const SpaceLayout& layout,
                                const ExperimentConfig& config) {
    if (config.q_components.empty()) {
        return NoiseCovariance::uniform_trace(layout, config.q_trace);
    }
    return NoiseCovariance::component_profile(layout, config.q_components,
                                              config.q_trace);
}

MarkLaw make_mark_law(const ExperimentConfig& config) {
    if (config.mark_law == "two_point") {
        return MarkLaw::two_point(config.mark_scale);
    }
    if (config.mark_law == "uniform") {
        return MarkLaw::uniform(config.mark_scale);
    }
    return MarkLaw::double_exponential(config.mark_scale);
}

ProblemSetup assemble_fhn(const ExperimentConfig& config) {
    const SpatialGrid grid(config.n_nodes);
    auto layout = std::make_shared<const SpaceLayout>(
        2, grid, std::vector<double>{1.0, 1.0 / config.gamma});
    const auto c = [&config](double x) {
        return piecewise_linear(config.c_values, x);
    };
    const auto p = [&config](double x) {
        return piecewise_linear(config.p_values, x);
    };
    Matrix a =
        assemble_fhn_operator(grid, c, p, config.gamma, config.alpha);
    auto bundle = std::make_shared<const OperatorBundle>(layout, std::move(a),
                                                         config.dt);
    PolynomialMap drift = PolynomialMap::fhn_cubic(config.xi, 2);
    NoiseCovariance covariance = make_covariance(*layout, config);
    JumpMeasureSpec noise{
        config.noise_intensity, make_mark_law(config),
        MarkEmbedding::fixed_profile(
            constant_component_profile(layout, config.profile_component))};
    Vector u0 = fhn_initial_state(*layout, grid, config.init_scale);
    return ProblemSetup{config,
                        layout,
                        std::move(bundle),
                        std::move(drift),
                        std::move(covariance),
                        std::move(noise),
                        std::move(u0)};
}

ProblemSetup assemble_scalar(const ExperimentConfig& config) {
    auto layout = std::make_shared<const SpaceLayout>(
        1, 1, Vector::Ones(1), std::vector<double>{1.0});
    Matrix a(1, 1);
    a(0, 0) = -config.scalar_rate;
    auto bundle = std::make_shared<const OperatorBundle>(layout, std::move(a),
                                                         config.dt);
    PolynomialMap drift =
        config.scalar_coefficients
            ? PolynomialMap(
                  {Eigen::Map<const Vector>(config.scalar_coefficients->data(),
                                            config.scalar_coefficients->size())})
            : PolynomialMap::fhn_cubic(config.xi, 1);
    NoiseCovariance covariance = make_covariance(*layout, config);
    JumpMeasureSpec noise{config.noise_intensity, make_mark_law(config),
                          MarkEmbedding::fixed_profile(
                              constant_component_profile(layout, 0))};
    Vector u0 = Vector::Constant(1, 0.5 * config.init_scale);
    return ProblemSetup{config,
                        layout,
                        std::move(bundle),
                        std::move(drift),
                        std::move(covariance),
                        std::move(noise),
                        std::move(u0)};
}

}  // namespace

ProblemSetup assemble_problem(const ExperimentConfig& config) {
    if (config.preset == "fhn") {
        return assemble_fhn(config);
    }
    return assemble_scalar(config);
}

bool ValidationReport::all_passed() const {
    for (const auto& check : checks) {
        if (!check.passed) return false;
    }
    return true;
}

ValidationReport rate_report(const ProblemSetup& setup) {
    ValidationReport report;
    report.omega = setup.omega();
    report.eta = setup.eta();
    report.gap = report.omega - report.eta;
    if (!(report.omega > 0.0)) {
        report.warnings.push_back(
            "linear part is not strictly dissipative (omega <= 0)");
    }
    if (!(report.gap > 0.0)) {
        report.warnings.push_back(
            "omega - eta <= 0: the drift is not dissipative and solutions "
            "may grow");
    }
    if (setup.config.preset == "fhn") {
        double min_p = setup.config.p_values.front();
        for (double value : setup.config.p_values) {
            min_p = std::min(min_p, value);
        }
        const double xi = setup.config.xi;
        if (xi * xi - xi + 1.0 > 3.0 * min_p) {
            report.warnings.push_back(
                "xi^2 - xi + 1 > 3 min p: cubic admissibility condition "
                "violated");
        }
    }
    return report;
}

namespace {

std::string format_detail(double measured, double bound,
                          const char* relation) {
    std::ostringstream out;
    out.precision(6);
    out << "measured " << measured << " " << relation << " " << bound;
    return out.str();
}

Vector random_state(const SpaceLayout& layout, SplitMix64& rng,
                    double amplitude) {
    Vector x(layout.dim());
    for (int i = 0; i < layout.dim(); ++i) {
        x(i) = amplitude * (2.0 * rng.uniform01() - 1.0);
    }
    return x;
}

}  // namespace

ValidationReport run_validation(const ProblemSetup& setup,
                                std::uint64_t seed) {
    ValidationReport report = rate_report(setup);
    const SpaceLayout& layout = *setup.layout;
    const OperatorBundle& bundle = *setup.bundle;
    const PolynomialMap& f = setup.drift;
    SplitMix64 rng(seed);

    {  // One-sided dissipativity of the drift against its gap eta.
        double worst = -std::numeric_limits<double>::infinity();
        for (int trial = 0; trial < 1000; ++trial) {
            const Vector u = random_state(layout, rng, 2.0);
            const Vector v = random_state(layout, rng, 2.0);
            const Vector du = u - v;
            const double lhs =
                layout.inner(f.eval(u) - f.eval(v) - f.eta() * du, du);
            worst = std::max(worst, lhs);
        }
        report.checks.push_back({"drift_one_sided_gap", worst <= 1e-10,
                                 format_detail(worst, 1e-10, "<=")});
    }
    {  // Weighted contraction of the step propagator.
        double worst = 0.0;
        const double bound = std::exp(-bundle.omega() * bundle.dt());
        for (int trial = 0; trial < 100; ++trial) {
            const Vector x = random_state(layout, rng, 1.0);
            const double ratio =
                layout.norm(bundle.step() * x) / layout.norm(x);
            worst = std::max(worst, ratio);
        }
        report.checks.push_back(
            {"step_contraction", worst <= bound + 1e-9,
             format_detail(worst, bound, "<=")});
    }
    {  // A * P1 = E - I.
        const Matrix lhs = bundle.generator() * bundle.step_integral();
        const Matrix rhs =
            bundle.step() - Matrix::Identity(layout.dim(), layout.dim());
        const double relative =
            (lhs - rhs).norm() / std::max(1e-300, rhs.norm());
        report.checks.push_back({"propagator_consistency", relative <= 1e-8,
                                 format_detail(relative, 1e-8, "<=")});
    }
    if (!f.is_zero()) {  // Taylor exactness at the polynomial degree.
        double worst = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            const Vector w = random_state(layout, rng, 1.0);
            const Vector h = random_state(layout, rng, 1.0);
            const Vector direct = f.eval(w + h);
            const Vector expanded = f.taylor_eval(w, h, f.max_degree());
            const double rel = (direct - expanded).norm() /
                               std::max(1e-300, direct.norm());
            worst = std::max(worst, rel);
        }
        report.checks.push_back({"taylor_exactness", worst <= 1e-12,
                                 format_detail(worst, 1e-12, "<=")});
    }
    {  // Divided difference oracle for the first correction.
        SplitMix64 path_rng(derive_stream_seed(seed, 0));
        const LevyPath path =
            sample_path(setup.noise, setup.config.horizon, path_rng);
        const Trajectory phi =
            solve_deterministic(bundle, f, setup.u0, setup.config.horizon);
        const Trajectory u1 =
            solve_first_correction(bundle, f, setup.covariance, phi, path);
        const Trajectory probe = fd_correction(
            bundle, f, setup.covariance, setup.u0, path, 1, 1e-4);
        Trajectory diff = probe;
        diff.states -= u1.states;
        const double scale = sup_weighted_norm(layout, u1);
        const double rel =
            scale > 0.0 ? sup_weighted_norm(layout, diff) / scale : 0.0;
        report.checks.push_back({"first_correction_oracle", rel <= 1e-3,
                                 format_detail(rel, 1e-3, "<=")});
    }
    return report;
}

}  // namespace levyexp
