#pragma once

#include <memory>

#include "levyexp/analysis.hpp"
#include "levyexp/config.hpp"

namespace levyexp {

/// Everything a solver run needs, assembled once from a config and shared
/// read-only across path workers.
struct ProblemSetup {
    ExperimentConfig config;
    LayoutPtr layout;
    std::shared_ptr<const OperatorBundle> bundle;
    PolynomialMap drift;
    NoiseCovariance covariance;
    JumpMeasureSpec noise;
    Vector u0;

    double omega() const { return bundle->omega(); }
    double eta() const { return drift.eta(); }
    double gap() const { return omega() - eta(); }
};

ProblemSetup assemble_problem(const ExperimentConfig& config);

struct ValidationCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ValidationReport {
    double omega = 0.0;
    double eta = 0.0;
    double gap = 0.0;
    std::vector<std::string> warnings;
    std::vector<ValidationCheck> checks;

    bool all_passed() const;
};

/// Rate summary plus admissibility warnings, without running property
/// suites (reported by `load`/`validate` before any work).
ValidationReport rate_report(const ProblemSetup& setup);

/// Full property run: dissipativity of the drift pair, semigroup
/// contraction, propagator consistency, Taylor exactness, and the divided
/// difference oracle for the first correction.
ValidationReport run_validation(const ProblemSetup& setup,
                                std::uint64_t seed);

}  // namespace levyexp
