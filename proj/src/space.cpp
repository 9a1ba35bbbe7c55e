#include "levyexp/space.hpp"

#include <cmath>
#include <stdexcept>

namespace levyexp {

SpatialGrid::SpatialGrid(int n) : n_nodes(n) {
    if (n < 3) {
        throw std::invalid_argument("SpatialGrid: n_nodes must be >= 3");
    }
}

std::vector<double> SpatialGrid::nodes() const {
    std::vector<double> xs(n_nodes);
    for (int i = 0; i < n_nodes; ++i) {
        xs[i] = node(i);
    }
    return xs;
}

namespace {

Vector trapezoid_weights(const SpatialGrid& grid) {
    const double h = grid.spacing();
    Vector w = Vector::Constant(grid.n_nodes, h);
    w(0) = h / 2.0;
    w(grid.n_nodes - 1) = h / 2.0;
    return w;
}

}  // namespace

SpaceLayout::SpaceLayout(int components, const SpatialGrid& grid,
                         std::vector<double> component_weights)
    : SpaceLayout(components, grid.n_nodes, trapezoid_weights(grid),
                  std::move(component_weights)) {}

SpaceLayout::SpaceLayout(int components, int n_nodes, Vector node_weights,
                         std::vector<double> component_weights)
    : components_(components),
      n_nodes_(n_nodes),
      node_weights_(std::move(node_weights)),
      component_weights_(std::move(component_weights)) {
    if (components_ < 1 || n_nodes_ < 1) {
        throw std::invalid_argument("SpaceLayout: empty space");
    }
    if (node_weights_.size() != n_nodes_) {
        throw std::invalid_argument("SpaceLayout: node weight count mismatch");
    }
    if (static_cast<int>(component_weights_.size()) != components_) {
        throw std::invalid_argument(
            "SpaceLayout: component weight count mismatch");
    }
    finish_setup();
}

void SpaceLayout::finish_setup() {
    for (double w : component_weights_) {
        if (!(w > 0.0)) {
            throw std::invalid_argument(
                "SpaceLayout: component weights must be positive");
        }
    }
    if ((node_weights_.array() <= 0.0).any()) {
        throw std::invalid_argument(
            "SpaceLayout: node weights must be positive");
    }
    weight_diag_.resize(dim());
    for (int c = 0; c < components_; ++c) {
        weight_diag_.segment(c * n_nodes_, n_nodes_) =
            component_weights_[c] * node_weights_;
    }
    sqrt_weight_diag_ = weight_diag_.array().sqrt();
    inv_sqrt_weight_diag_ = sqrt_weight_diag_.array().inverse();
}

double SpaceLayout::inner(const Vector& x, const Vector& y) const {
    if (x.size() != dim() || y.size() != dim()) {
        throw std::invalid_argument("SpaceLayout::inner: dimension mismatch");
    }
    return (x.array() * weight_diag_.array() * y.array()).sum();
}

double SpaceLayout::norm(const Vector& x) const {
    return std::sqrt(std::max(0.0, inner(x, x)));
}

double SpaceLayout::operator_norm(const Matrix& m) const {
    if (m.rows() != dim() || m.cols() != dim()) {
        throw std::invalid_argument(
            "SpaceLayout::operator_norm: dimension mismatch");
    }
    const Matrix similar = sqrt_weight_diag_.asDiagonal() * m *
                           inv_sqrt_weight_diag_.asDiagonal();
    Eigen::JacobiSVD<Matrix> svd(similar);
    return svd.singularValues()(0);
}

Eigen::Ref<const Vector> SpaceLayout::component(const Vector& x, int c) const {
    return x.segment(c * n_nodes_, n_nodes_);
}

Eigen::Ref<Vector> SpaceLayout::component(Vector& x, int c) const {
    return x.segment(c * n_nodes_, n_nodes_);
}

Field::Field(LayoutPtr l, Vector v) : layout(std::move(l)), values(std::move(v)) {
    if (!layout) {
        throw std::invalid_argument("Field: null layout");
    }
    if (values.size() != layout->dim()) {
        throw std::invalid_argument("Field: value size does not match layout");
    }
}

double inner(const Field& a, const Field& b) {
    return a.layout->inner(a.values, b.values);
}

}  // namespace levyexp
