#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "levyexp/io.hpp"
#include "levyexp/problem.hpp"

using namespace levyexp;

namespace {

ProblemSetup fhn_setup() { return assemble_problem(fhn_preset()); }

ProblemSetup scalar_setup() { return assemble_problem(scalar_preset()); }

LevyPath seeded_path(const ProblemSetup& setup, std::uint64_t index) {
    SplitMix64 rng(derive_stream_seed(setup.config.master_seed, index));
    return sample_path(setup.noise, setup.config.horizon, rng);
}

LevyPath nonempty_path(const ProblemSetup& setup) {
    for (std::uint64_t index = 0;; ++index) {
        LevyPath path = seeded_path(setup, index);
        if (!path.jump_times.empty()) return path;
    }
}

}  // namespace

TEST_CASE("pairwise statistics") {
    SUBCASE("pairwise sum matches a compensated reference") {
        SplitMix64 rng(1);
        std::vector<double> values(1013);
        long double exact = 0.0L;
        for (auto& v : values) {
            v = 2.0 * rng.uniform01() - 1.0;
            exact += static_cast<long double>(v);
        }
        CHECK(pairwise_sum(values) ==
              doctest::Approx(static_cast<double>(exact)).epsilon(1e-13));
    }
    SUBCASE("mean with error needs two samples") {
        std::vector<double> one{1.0};
        CHECK_THROWS_AS(mean_with_error(one), std::invalid_argument);
    }
    SUBCASE("quantiles interpolate the sorted sample") {
        std::vector<double> values{3.0, 1.0, 2.0, 4.0};
        CHECK(median(values) == doctest::Approx(2.5));
        CHECK(quantile(values, 0.0) == doctest::Approx(1.0));
        CHECK(quantile(values, 1.0) == doctest::Approx(4.0));
    }
}

TEST_CASE("sup moment") {
    SUBCASE("all-zero remainders give a zero estimate") {
        std::vector<double> zeros(16, 0.0);
        const MeanEstimate est = sup_moment(zeros, 2);
        CHECK(est.mean == 0.0);
        CHECK(est.std_error == 0.0);
    }
    SUBCASE("a single path is rejected") {
        std::vector<double> one{0.5};
        CHECK_THROWS_AS(sup_moment(one, 2), std::invalid_argument);
    }
    SUBCASE("doubling the sample moves the estimate within noise") {
        SplitMix64 rng(3);
        std::vector<double> values(4000);
        for (auto& v : values) v = 0.5 + rng.uniform01();
        const auto half = sup_moment(
            std::span<const double>(values.data(), 2000), 2);
        const auto full = sup_moment(values, 2);
        CHECK(std::abs(full.mean - half.mean) <= 3.0 * half.std_error);
    }
}

TEST_CASE("order fit") {
    SUBCASE("exact power law is recovered exactly") {
        const int p = 2, n = 1;
        const double exponent = p * (n + 1);
        std::vector<double> eps{0.2, 0.1, 0.05, 0.025};
        std::vector<double> moments(eps.size());
        for (std::size_t i = 0; i < eps.size(); ++i) {
            moments[i] = 0.7 * std::pow(eps[i], exponent);
        }
        const OrderFitResult fit = fit_order(eps, moments);
        CHECK(fit.slope == doctest::Approx(exponent).epsilon(1e-12));
        CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(fit.points_used == 4);
    }
    SUBCASE("five percent multiplicative noise keeps the slope") {
        SplitMix64 rng(17);
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<double> eps{0.2, 0.1, 0.05, 0.025};
            std::vector<double> moments(eps.size());
            for (std::size_t i = 0; i < eps.size(); ++i) {
                const double wiggle = 1.0 + 0.05 * (2.0 * rng.uniform01() - 1.0);
                moments[i] = 0.7 * std::pow(eps[i], 3.0) * wiggle;
            }
            const OrderFitResult fit = fit_order(eps, moments);
            CHECK(std::abs(fit.slope - 3.0) <= 0.15);
        }
    }
    SUBCASE("non-positive values are dropped with a warning") {
        std::vector<double> eps{0.2, 0.1, 0.05, 0.025};
        std::vector<double> moments{0.04, 0.01, 0.0025, 0.0};
        const OrderFitResult fit = fit_order(eps, moments);
        CHECK(fit.points_used == 3);
        CHECK(fit.warnings.size() == 1);
        CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-10));
    }
    SUBCASE("fewer than three surviving points is an error") {
        std::vector<double> eps{0.2, 0.1, 0.05};
        std::vector<double> moments{0.04, 0.0, 0.0};
        CHECK_THROWS_AS(fit_order(eps, moments), std::invalid_argument);
    }
    SUBCASE("standard errors weight the fit") {
        std::vector<double> eps{0.2, 0.1, 0.05, 0.025};
        std::vector<double> moments(eps.size());
        for (std::size_t i = 0; i < eps.size(); ++i) {
            moments[i] = std::pow(eps[i], 4.0);
        }
        moments[0] *= 1.8;  // distorted but down-weighted point
        std::vector<double> ses{moments[0] * 10.0, moments[1] * 1e-4,
                                moments[2] * 1e-4, moments[3] * 1e-4};
        const OrderFitResult weighted = fit_order(eps, moments, ses);
        const OrderFitResult plain = fit_order(eps, moments);
        CHECK(std::abs(weighted.slope - 4.0) < std::abs(plain.slope - 4.0));
        CHECK(weighted.slope == doctest::Approx(4.0).epsilon(1e-2));
    }
}

TEST_CASE("remainder coupling") {
    const ProblemSetup setup = fhn_setup();
    const LevyPath path = nonempty_path(setup);
    const ExpansionSet set = expand(*setup.bundle, setup.drift,
                                    setup.covariance, setup.u0, path, 1);

    SUBCASE("epsilon zero gives the identically zero remainder") {
        const Trajectory u0_run = solve_sde(*setup.bundle, setup.drift,
                                            setup.covariance, 0.0, setup.u0,
                                            path);
        const Trajectory rem = remainder(u0_run, set, 0.0);
        CHECK((rem.states.array() == 0.0).all());
    }
    SUBCASE("linear drift leaves only rounding") {
        Vector slope(2);
        slope << 0.0, -0.4;
        const PolynomialMap linear({slope, Vector()});
        const ExpansionSet linear_set = expand(
            *setup.bundle, linear, setup.covariance, setup.u0, path, 1);
        const Trajectory u_eps = solve_sde(*setup.bundle, linear,
                                           setup.covariance, 0.25, setup.u0,
                                           path);
        const Trajectory rem = remainder(u_eps, linear_set, 0.25);
        CHECK(sup_weighted_norm(*setup.layout, rem) <= 1e-10);
    }
    SUBCASE("halving epsilon shrinks the remainder about fourfold") {
        const Trajectory u_a = solve_sde(*setup.bundle, setup.drift,
                                         setup.covariance, 0.1, setup.u0,
                                         path);
        const Trajectory u_b = solve_sde(*setup.bundle, setup.drift,
                                         setup.covariance, 0.05, setup.u0,
                                         path);
        const double sup_a = sup_weighted_norm(
            *setup.layout, remainder(u_a, set, 0.1));
        const double sup_b = sup_weighted_norm(
            *setup.layout, remainder(u_b, set, 0.05));
        const double ratio = sup_a / sup_b;
        CHECK(ratio >= 3.2);
        CHECK(ratio <= 5.0);
    }
    SUBCASE("grid mismatch is rejected") {
        Trajectory truncated = set.phi;
        truncated.states.conservativeResize(Eigen::NoChange,
                                            truncated.states.cols() - 1);
        truncated.times.pop_back();
        CHECK_THROWS_AS(remainder(truncated, set, 0.1),
                        std::invalid_argument);
    }
}

TEST_CASE("divided-difference oracle") {
    SUBCASE("linear case equals the convolution for any eps0") {
        const ProblemSetup setup = fhn_setup();
        const LevyPath path = nonempty_path(setup);
        const PolynomialMap none = PolynomialMap::zero(2);
        const Trajectory z =
            stochastic_convolution(*setup.bundle, setup.covariance, path);
        for (double eps0 : {0.5, 1e-2, 1e-5}) {
            const Trajectory probe = fd_correction(
                *setup.bundle, none, setup.covariance, setup.u0, path, 1,
                eps0);
            CHECK((probe.states - z.states).cwiseAbs().maxCoeff() <= 1e-9);
        }
    }
    SUBCASE("error decays linearly in eps0") {
        const ProblemSetup setup = scalar_setup();
        const LevyPath path = nonempty_path(setup);
        const ExpansionSet set = expand(*setup.bundle, setup.drift,
                                        setup.covariance, setup.u0, path, 1);
        std::vector<double> log_eps, log_err;
        for (double eps0 : {1e-2, 1e-3, 1e-4}) {
            const Trajectory probe =
                fd_correction(*setup.bundle, setup.drift, setup.covariance,
                              setup.u0, path, 1, eps0);
            Trajectory diff = probe;
            diff.states -= set.correction(1).states;
            log_eps.push_back(std::log(eps0));
            log_err.push_back(
                std::log(sup_weighted_norm(*setup.layout, diff)));
        }
        const LineFit fit = fit_line(log_eps, log_err);
        CHECK(fit.slope == doctest::Approx(1.0).epsilon(0.15));
    }
}

TEST_CASE("order study pipeline at desk scale") {
    const ProblemSetup setup = fhn_setup();
    OrderStudyConfig config;
    config.epsilons = {0.2, 0.1, 0.05};
    config.order = 1;
    config.moment_p = 2;
    config.paths = 40;
    config.horizon = setup.config.horizon;
    config.master_seed = setup.config.master_seed;
    config.threads = 2;

    const OrderStudyResult result =
        run_order_study(*setup.bundle, setup.drift, setup.covariance,
                        setup.noise, setup.u0, config);
    REQUIRE(result.blocks.size() == 1);
    const OrderStudyBlock& block = result.block(1);
    CHECK(block.sup_fit.slope > 1.5);
    CHECK(block.sup_fit.slope < 2.5);
    CHECK(block.moment_fit.slope > 3.0);
    CHECK(block.shrink_violation_fraction <= 0.05);

    SUBCASE("runs are reproducible and thread-count invariant") {
        OrderStudyConfig serial = config;
        serial.threads = 1;
        const OrderStudyResult again = run_order_study(
            *setup.bundle, setup.drift, setup.covariance, setup.noise,
            setup.u0, serial);
        for (int e = 0; e < 3; ++e) {
            for (int i = 0; i < config.paths; ++i) {
                CHECK(result.sups[0][e][i] == again.sups[0][e][i]);
            }
            CHECK(result.block(1).rows[e].moment_estimate ==
                  again.block(1).rows[e].moment_estimate);
        }
    }
    SUBCASE("csv and json outputs are written") {
        const auto dir = std::filesystem::temp_directory_path() /
                         "levyexp_test_outputs";
        std::filesystem::remove_all(dir);
        write_order_study_csv(dir / "order_study.csv", result);
        write_run_summary_json(dir / "run_summary.json", setup,
                               "order-study", &result);
        CHECK(std::filesystem::exists(dir / "order_study.csv"));
        CHECK(std::filesystem::exists(dir / "run_summary.json"));
    }
}

TEST_CASE("validation suite passes on both presets") {
    for (const ExperimentConfig& config : {fhn_preset(), scalar_preset()}) {
        const ProblemSetup setup = assemble_problem(config);
        const ValidationReport report = run_validation(setup, 7);
        CHECK(report.all_passed());
        CHECK(report.gap > 0.0);
    }
}
