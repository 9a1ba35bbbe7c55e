#pragma once

#include <Eigen/Dense>
#include <memory>
#include <vector>

namespace levyexp {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Uniform grid on [0,1] with both endpoints as nodes.
struct SpatialGrid {
    int n_nodes;

    explicit SpatialGrid(int n);

    double spacing() const { return 1.0 / (n_nodes - 1); }
    double node(int i) const { return i * spacing(); }
    double midpoint(int i) const { return (node(i) + node(i + 1)) / 2.0; }
    std::vector<double> nodes() const;
};

/// Discrete state space: m components on n nodes with a weighted L2 inner
/// product. The node weights are the quadrature weights of the spatial
/// discretization (trapezoid rule for a SpatialGrid); each component carries
/// an additional positive weight. The full diagonal metric is
///   d[c*n + i] = component_weight[c] * node_weight[i].
class SpaceLayout {
  public:
    SpaceLayout(int components, const SpatialGrid& grid,
                std::vector<double> component_weights);
    SpaceLayout(int components, int n_nodes, Vector node_weights,
                std::vector<double> component_weights);

    int components() const { return components_; }
    int n_nodes() const { return n_nodes_; }
    int dim() const { return components_ * n_nodes_; }

    const Vector& metric_diagonal() const { return weight_diag_; }
    const Vector& node_weights() const { return node_weights_; }
    const std::vector<double>& component_weights() const {
        return component_weights_;
    }

    double inner(const Vector& x, const Vector& y) const;
    double norm(const Vector& x) const;

    /// Operator norm of M induced by the weighted inner product,
    /// i.e. the largest singular value of D^{1/2} M D^{-1/2}.
    double operator_norm(const Matrix& m) const;

    /// View of one component's block of a state vector.
    Eigen::Ref<const Vector> component(const Vector& x, int c) const;
    Eigen::Ref<Vector> component(Vector& x, int c) const;

  private:
    void finish_setup();

    int components_;
    int n_nodes_;
    Vector node_weights_;
    std::vector<double> component_weights_;
    Vector weight_diag_;
    Vector sqrt_weight_diag_;
    Vector inv_sqrt_weight_diag_;

    friend class OperatorBundle;
    friend double dissipativity_rate(const SpaceLayout&, const Matrix&);

    const Vector& sqrt_metric() const { return sqrt_weight_diag_; }
    const Vector& inv_sqrt_metric() const { return inv_sqrt_weight_diag_; }
};

using LayoutPtr = std::shared_ptr<const SpaceLayout>;

/// A state vector tied to its layout.
struct Field {
    LayoutPtr layout;
    Vector values;

    Field() = default;
    Field(LayoutPtr l, Vector v);

    double norm() const { return layout->norm(values); }
};

double inner(const Field& a, const Field& b);

}  // namespace levyexp
