#include "levyexp/levy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace levyexp {

MarkLaw::MarkLaw(Kind kind, double scale) : kind_(kind), scale_(scale) {
    if (!(scale > 0.0)) {
        throw std::invalid_argument("MarkLaw: scale must be positive");
    }
}

MarkLaw MarkLaw::two_point(double a) { return MarkLaw(Kind::TwoPoint, a); }
MarkLaw MarkLaw::uniform(double a) { return MarkLaw(Kind::Uniform, a); }
MarkLaw MarkLaw::double_exponential(double b) {
    return MarkLaw(Kind::DoubleExponential, b);
}

double MarkLaw::abs_moment(int m) const {
    if (m < 1) {
        throw std::invalid_argument("MarkLaw::abs_moment: m must be >= 1");
    }
    switch (kind_) {
        case Kind::TwoPoint:
            return std::pow(scale_, m);
        case Kind::Uniform:
            return std::pow(scale_, m) / (m + 1);
        case Kind::DoubleExponential: {
            double factorial = 1.0;
            for (int i = 2; i <= m; ++i) factorial *= i;
            return std::pow(scale_, m) * factorial;
        }
    }
    return 0.0;
}

double MarkLaw::sample(SplitMix64& rng) const {
    switch (kind_) {
        case Kind::TwoPoint:
            return rng.coin() ? scale_ : -scale_;
        case Kind::Uniform:
            return scale_ * (2.0 * rng.uniform01() - 1.0);
        case Kind::DoubleExponential: {
            const double magnitude = -scale_ * std::log(rng.uniform01_positive());
            return rng.coin() ? magnitude : -magnitude;
        }
    }
    return 0.0;
}

MarkEmbedding::MarkEmbedding(std::vector<Mode> modes)
    : modes_(std::move(modes)) {
    if (modes_.empty()) {
        throw std::invalid_argument("MarkEmbedding: no modes");
    }
    layout_ = modes_.front().direction.layout;
    double total = 0.0;
    for (const Mode& mode : modes_) {
        if (mode.direction.layout->dim() != layout_->dim()) {
            throw std::invalid_argument("MarkEmbedding: dimension mismatch");
        }
        if (!(mode.probability > 0.0)) {
            throw std::invalid_argument(
                "MarkEmbedding: probabilities must be positive");
        }
        if (mode.direction.norm() == 0.0) {
            throw std::invalid_argument("MarkEmbedding: zero direction");
        }
        total += mode.probability;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw std::invalid_argument(
            "MarkEmbedding: probabilities must sum to 1");
    }
}

MarkEmbedding MarkEmbedding::fixed_profile(Field direction) {
    const double norm = direction.norm();
    if (norm == 0.0) {
        throw std::invalid_argument("MarkEmbedding: zero profile");
    }
    direction.values /= norm;
    return MarkEmbedding({Mode{std::move(direction), 1.0}});
}

MarkEmbedding MarkEmbedding::mode_spread(std::vector<Mode> modes) {
    return MarkEmbedding(std::move(modes));
}

double MarkEmbedding::weighted_norm_moment(int m) const {
    double acc = 0.0;
    for (const Mode& mode : modes_) {
        acc += mode.probability * std::pow(mode.direction.norm(), m);
    }
    return acc;
}

const Vector& MarkEmbedding::sample_direction(SplitMix64& rng) const {
    if (modes_.size() == 1) {
        return modes_.front().direction.values;
    }
    const double u = rng.uniform01();
    double cumulative = 0.0;
    for (const Mode& mode : modes_) {
        cumulative += mode.probability;
        if (u < cumulative) {
            return mode.direction.values;
        }
    }
    return modes_.back().direction.values;
}

NoiseCovariance::NoiseCovariance(Vector diagonal)
    : diagonal_(std::move(diagonal)) {
    if (diagonal_.size() == 0) {
        throw std::invalid_argument("NoiseCovariance: empty diagonal");
    }
    if ((diagonal_.array() < 0.0).any()) {
        throw std::invalid_argument(
            "NoiseCovariance: diagonal must be nonnegative");
    }
    sqrt_diagonal_ = diagonal_.array().sqrt();
    trace_ = diagonal_.sum();
}

NoiseCovariance NoiseCovariance::uniform_trace(const SpaceLayout& layout,
                                               double trace) {
    if (!(trace >= 0.0)) {
        throw std::invalid_argument("NoiseCovariance: trace must be >= 0");
    }
    return NoiseCovariance(
        Vector::Constant(layout.dim(), trace / layout.dim()));
}

NoiseCovariance NoiseCovariance::component_profile(
    const SpaceLayout& layout, const std::vector<double>& relative,
    double trace) {
    if (static_cast<int>(relative.size()) != layout.components()) {
        throw std::invalid_argument(
            "NoiseCovariance: one relative weight per component required");
    }
    double total = 0.0;
    for (double r : relative) {
        if (r < 0.0) {
            throw std::invalid_argument(
                "NoiseCovariance: relative weights must be nonnegative");
        }
        total += r;
    }
    if (!(total > 0.0)) {
        throw std::invalid_argument("NoiseCovariance: all weights zero");
    }
    Vector diag(layout.dim());
    const double scale = trace / (layout.n_nodes() * total);
    for (int c = 0; c < layout.components(); ++c) {
        diag.segment(c * layout.n_nodes(), layout.n_nodes())
            .setConstant(relative[c] * scale);
    }
    return NoiseCovariance(std::move(diag));
}

Vector NoiseCovariance::apply_sqrt(const Vector& x) const {
    if (x.size() != diagonal_.size()) {
        throw std::invalid_argument("NoiseCovariance: dimension mismatch");
    }
    return sqrt_diagonal_.cwiseProduct(x);
}

Vector LevyPath::value_at(double t) const {
    Vector acc = Vector::Zero(dim);
    for (std::size_t i = 0; i < jump_times.size() && jump_times[i] <= t; ++i) {
        acc += marks[i];
    }
    return acc;
}

Vector LevyPath::value_before(double t) const {
    Vector acc = Vector::Zero(dim);
    for (std::size_t i = 0; i < jump_times.size() && jump_times[i] < t; ++i) {
        acc += marks[i];
    }
    return acc;
}

LevyPath sample_path(const JumpMeasureSpec& spec, double horizon,
                     SplitMix64& rng) {
    if (!(spec.intensity > 0.0)) {
        throw std::invalid_argument("sample_path: intensity must be positive");
    }
    if (!(horizon > 0.0)) {
        throw std::invalid_argument("sample_path: horizon must be positive");
    }
    LevyPath path;
    path.horizon = horizon;
    path.dim = spec.embedding.dim();
    const int count = rng.poisson(spec.intensity * horizon);
    path.jump_times.resize(count);
    for (int i = 0; i < count; ++i) {
        path.jump_times[i] = horizon * rng.uniform01_positive();
    }
    std::sort(path.jump_times.begin(), path.jump_times.end());
    path.marks.reserve(count);
    for (int i = 0; i < count; ++i) {
        const double scalar = spec.law.sample(rng);
        path.marks.push_back(scalar * spec.embedding.sample_direction(rng));
    }
    return path;
}

double jump_measure_moment(const JumpMeasureSpec& spec, int m) {
    if (m < 1) {
        throw std::invalid_argument("jump_measure_moment: m must be >= 1");
    }
    return spec.intensity * spec.law.abs_moment(m) *
           spec.embedding.weighted_norm_moment(m);
}

std::vector<Vector> bin_increments(const LevyPath& path, double dt) {
    if (!(dt > 0.0)) {
        throw std::invalid_argument("bin_increments: dt must be positive");
    }
    const double steps_exact = path.horizon / dt;
    const int steps = static_cast<int>(std::llround(steps_exact));
    if (steps < 1 ||
        std::abs(steps * dt - path.horizon) >
            1e-9 * std::max(1.0, path.horizon)) {
        throw std::invalid_argument(
            "bin_increments: dt does not divide the horizon");
    }
    std::vector<Vector> increments(steps, Vector::Zero(path.dim));
    for (std::size_t i = 0; i < path.jump_times.size(); ++i) {
        const double t = path.jump_times[i];
        // Right-closed bins: find m with m*dt < t <= (m+1)*dt.
        int m = static_cast<int>(std::ceil(t / dt)) - 1;
        while (m > 0 && t <= m * dt) --m;
        while (m + 1 < steps && t > (m + 1) * dt) ++m;
        if (m < 0 || m >= steps || !(t > m * dt) ||
            (m + 1 < steps && !(t <= (m + 1) * dt))) {
            throw std::logic_error(
                "bin_increments: jump time outside (0, horizon]");
        }
        increments[m] += path.marks[i];
    }
    return increments;
}

}  // namespace levyexp
