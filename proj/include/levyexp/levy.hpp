#pragma once

#include <vector>

#include "levyexp/rng.hpp"
#include "levyexp/space.hpp"

namespace levyexp {

/// Symmetric scalar mark laws with all absolute moments in closed form.
/// Symmetry keeps the jump measure mean-zero by construction.
class MarkLaw {
  public:
    enum class Kind { TwoPoint, Uniform, DoubleExponential };

    static MarkLaw two_point(double a);
    static MarkLaw uniform(double a);
    static MarkLaw double_exponential(double b);

    Kind kind() const { return kind_; }
    double scale() const { return scale_; }

    /// E|S|^m.
    double abs_moment(int m) const;
    double sample(SplitMix64& rng) const;

  private:
    MarkLaw(Kind kind, double scale);
    Kind kind_;
    double scale_;
};

/// How scalar marks become states: a single fixed direction of unit weighted
/// norm, or a finite mix of directions drawn by probability.
class MarkEmbedding {
  public:
    struct Mode {
        Field direction;
        double probability;
    };

    /// Single direction; normalized to unit weighted norm.
    static MarkEmbedding fixed_profile(Field direction);
    /// Mixture of directions; probabilities must be positive and sum to 1.
    static MarkEmbedding mode_spread(std::vector<Mode> modes);

    const std::vector<Mode>& modes() const { return modes_; }
    const LayoutPtr& layout() const { return layout_; }
    int dim() const { return layout_->dim(); }

    /// sum_k p_k |d_k|_w^m.
    double weighted_norm_moment(int m) const;

    const Vector& sample_direction(SplitMix64& rng) const;

  private:
    explicit MarkEmbedding(std::vector<Mode> modes);
    std::vector<Mode> modes_;
    LayoutPtr layout_;
};

struct JumpMeasureSpec {
    double intensity;  // expected jumps per unit time, > 0
    MarkLaw law;
    MarkEmbedding embedding;
};

/// Diagonal trace-class covariance in the grid/component basis.
class NoiseCovariance {
  public:
    explicit NoiseCovariance(Vector diagonal);

    static NoiseCovariance uniform_trace(const SpaceLayout& layout,
                                         double trace);
    /// Per-component relative weights scaled so the total trace matches.
    static NoiseCovariance component_profile(
        const SpaceLayout& layout, const std::vector<double>& relative,
        double trace);

    const Vector& diagonal() const { return diagonal_; }
    double trace() const { return trace_; }

    Vector apply_sqrt(const Vector& x) const;

  private:
    Vector diagonal_;
    Vector sqrt_diagonal_;
    double trace_;
};

/// One realization of a compound Poisson path on [0, horizon]: sorted jump
/// times in (0, horizon] with one mark per jump.
struct LevyPath {
    double horizon = 0.0;
    int dim = 0;
    std::vector<double> jump_times;
    std::vector<Vector> marks;

    /// Cadlag value L(t) = sum of marks with jump time <= t.
    Vector value_at(double t) const;
    /// Left limit L(t-): marks with jump time strictly before t.
    Vector value_before(double t) const;
};

/// Draw one path: jump count Poisson(intensity*horizon), times i.i.d.
/// uniform on (0, horizon] and sorted, marks i.i.d. law x embedding.
/// Deterministic given the stream.
LevyPath sample_path(const JumpMeasureSpec& spec, double horizon,
                     SplitMix64& rng);

/// Closed-form absolute moment of the jump measure,
/// int |y|_w^m nu(dy) = intensity * E|S|^m * sum_k p_k |d_k|_w^m.
double jump_measure_moment(const JumpMeasureSpec& spec, int m);

/// Per-step jump sums with right-closed bins (t_m, t_{m+1}]: a jump exactly
/// on a step boundary belongs to the earlier step. dt must divide the
/// horizon.
std::vector<Vector> bin_increments(const LevyPath& path, double dt);

}  // namespace levyexp
