#pragma once

#include <span>
#include <vector>

namespace levyexp {

/// Pairwise (tree) summation: reproducible regardless of how the values were
/// produced, and accurate for long Monte Carlo reductions.
double pairwise_sum(std::span<const double> values);

struct MeanEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    int count = 0;
};

/// Sample mean with standard error of the mean; needs at least two values.
MeanEstimate mean_with_error(std::span<const double> values);

/// Quantile by linear interpolation of the sorted sample, q in [0,1].
double quantile(std::vector<double> values, double q);
double median(std::vector<double> values);

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

/// Least squares y = a + b x; optional positive weights.
LineFit fit_line(std::span<const double> x, std::span<const double> y);
LineFit fit_line_weighted(std::span<const double> x,
                          std::span<const double> y,
                          std::span<const double> weights);

}  // namespace levyexp
