#include "levyexp/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace levyexp {

double pairwise_sum(std::span<const double> values) {
    if (values.size() <= 8) {
        double acc = 0.0;
        for (double v : values) acc += v;
        return acc;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) +
           pairwise_sum(values.subspan(half));
}

MeanEstimate mean_with_error(std::span<const double> values) {
    if (values.size() < 2) {
        throw std::invalid_argument(
            "mean_with_error: need at least two samples");
    }
    MeanEstimate est;
    est.count = static_cast<int>(values.size());
    est.mean = pairwise_sum(values) / est.count;
    std::vector<double> sq(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double d = values[i] - est.mean;
        sq[i] = d * d;
    }
    const double variance = pairwise_sum(sq) / (est.count - 1);
    est.std_error = std::sqrt(variance / est.count);
    return est;
}

double quantile(std::vector<double> values, double q) {
    if (values.empty()) {
        throw std::invalid_argument("quantile: empty sample");
    }
    if (q < 0.0 || q > 1.0) {
        throw std::invalid_argument("quantile: q outside [0,1]");
    }
    std::sort(values.begin(), values.end());
    const double position = q * (values.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(position);
    if (lo + 1 >= values.size()) {
        return values.back();
    }
    const double frac = position - lo;
    return values[lo] * (1.0 - frac) + values[lo + 1] * frac;
}

double median(std::vector<double> values) {
    return quantile(std::move(values), 0.5);
}

LineFit fit_line_weighted(std::span<const double> x,
                          std::span<const double> y,
                          std::span<const double> weights) {
    if (x.size() != y.size() || x.size() != weights.size()) {
        throw std::invalid_argument("fit_line: size mismatch");
    }
    if (x.size() < 2) {
        throw std::invalid_argument("fit_line: need at least two points");
    }
    double wsum = 0.0, xmean = 0.0, ymean = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(weights[i] > 0.0)) {
            throw std::invalid_argument("fit_line: weights must be positive");
        }
        wsum += weights[i];
        xmean += weights[i] * x[i];
        ymean += weights[i] * y[i];
    }
    xmean /= wsum;
    ymean /= wsum;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - xmean;
        const double dy = y[i] - ymean;
        sxx += weights[i] * dx * dx;
        sxy += weights[i] * dx * dy;
        syy += weights[i] * dy * dy;
    }
    if (!(sxx > 0.0)) {
        throw std::invalid_argument("fit_line: degenerate abscissae");
    }
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = ymean - fit.slope * xmean;
    if (syy > 0.0) {
        double ss_res = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double r = y[i] - fit.intercept - fit.slope * x[i];
            ss_res += weights[i] * r * r;
        }
        fit.r_squared = 1.0 - ss_res / syy;
    } else {
        fit.r_squared = 1.0;
    }
    return fit;
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    std::vector<double> ones(x.size(), 1.0);
    return fit_line_weighted(x, y, ones);
}

}  // namespace levyexp
