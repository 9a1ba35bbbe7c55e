#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "levyexp/expansion.hpp"
#include "levyexp/stats.hpp"

namespace levyexp {

/// Defect of the truncated expansion on a common path and grid:
///   R_m = u_eps_m - phi_m - sum_{k<=n} eps^k u_k_m.
/// With eps = 0 the result is identically zero by solver coupling.
Trajectory remainder(const Trajectory& u_eps, const ExpansionSet& set,
                     double epsilon);
/// Same, truncated at order k <= set.order.
Trajectory remainder_at_order(const Trajectory& u_eps,
                              const ExpansionSet& set, double epsilon,
                              int order);

/// max over the time grid of the weighted norm.
double sup_weighted_norm(const SpaceLayout& layout, const Trajectory& traj);

/// Monte Carlo estimate of E[(sup_t |R|_w)^p] from per-path sup norms, with
/// the standard error of the mean. Requires at least two paths.
MeanEstimate sup_moment(std::span<const double> sup_norms, int p);

struct OrderFitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    int points_used = 0;
    std::vector<std::string> warnings;
};

/// Least-squares slope of log(value) against log(epsilon). Points with
/// non-positive values are dropped with a warning; fewer than three
/// surviving points is an error. Optional standard errors turn the fit into
/// a standard-error-weighted one (weights 1/se_log^2).
OrderFitResult fit_order(std::span<const double> epsilons,
                         std::span<const double> values,
                         std::span<const double> std_errors = {});

/// Divided-difference probe of the corrections on a common path:
///   k=1: (u_eps - phi)/eps,   k=2: (u_eps - phi - eps*u1)/eps^2.
/// Independent of the correction solvers; used as their oracle.
Trajectory fd_correction(const OperatorBundle& bundle, const PolynomialMap& f,
                         const NoiseCovariance& q, const Vector& u0,
                         const LevyPath& path, int k, double eps0);

struct OrderStudyConfig {
    std::vector<double> epsilons;  // strictly decreasing, max <= 1
    int order = 1;                 // expansion order n
    int moment_p = 2;              // even moment exponent
    int paths = 100;
    double horizon = 0.5;
    std::uint64_t master_seed = 0;
    int threads = 1;
};

struct OrderStudyRow {
    double epsilon = 0.0;
    double median_sup = 0.0;
    double q25 = 0.0;
    double q75 = 0.0;
    double moment_estimate = 0.0;
    double moment_std_error = 0.0;
};

/// Study results for the remainder truncated at one order k.
struct OrderStudyBlock {
    int order = 0;
    std::vector<OrderStudyRow> rows;  // one per epsilon
    OrderFitResult sup_fit;           // log median sup vs log eps
    OrderFitResult moment_fit;        // log mean sup^p vs log eps, SE-weighted
    double shrink_violation_fraction = 0.0;
};

struct OrderStudyResult {
    OrderStudyConfig config;
    std::vector<OrderStudyBlock> blocks;  // k = 1..order
    // Raw per-path sup norms, sups[k-1][eps_index][path_index].
    std::vector<std::vector<std::vector<double>>> sups;

    const OrderStudyBlock& block(int k) const { return blocks.at(k - 1); }
};

/// Full Monte Carlo order study: one expansion set per path, one SDE solve
/// per (path, epsilon) on the shared path, remainders for every k <= order.
/// Paths are distributed over threads; results depend only on the seeds.
OrderStudyResult run_order_study(const OperatorBundle& bundle,
                                 const PolynomialMap& f,
                                 const NoiseCovariance& q,
                                 const JumpMeasureSpec& noise,
                                 const Vector& u0,
                                 const OrderStudyConfig& config);

}  // namespace levyexp
