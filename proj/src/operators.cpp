#include "levyexp/operators.hpp"

#include <stdexcept>

#include "levyexp/expm.hpp"

namespace levyexp {

Matrix assemble_diffusion_operator(const SpatialGrid& grid,
                                   const ScalarFunction& c) {
    const int n = grid.n_nodes;
    const double h = grid.spacing();

    Vector c_mid(n - 1);
    for (int i = 0; i < n - 1; ++i) {
        const double value = c(grid.midpoint(i));
        if (!(value > 0.0)) {
            throw std::invalid_argument(
                "assemble_diffusion_operator: c must be strictly positive");
        }
        c_mid(i) = value;
    }

    Matrix a0 = Matrix::Zero(n, n);
    const double inv_h2 = 1.0 / (h * h);
    // Interior rows: flux difference over a full cell.
    for (int i = 1; i < n - 1; ++i) {
        a0(i, i - 1) = inv_h2 * c_mid(i - 1);
        a0(i, i) = -inv_h2 * (c_mid(i - 1) + c_mid(i));
        a0(i, i + 1) = inv_h2 * c_mid(i);
    }
    // Boundary rows: zero exterior flux over a half cell.
    a0(0, 0) = -2.0 * inv_h2 * c_mid(0);
    a0(0, 1) = 2.0 * inv_h2 * c_mid(0);
    a0(n - 1, n - 2) = 2.0 * inv_h2 * c_mid(n - 2);
    a0(n - 1, n - 1) = -2.0 * inv_h2 * c_mid(n - 2);
    return a0;
}

Matrix assemble_fhn_operator(const SpatialGrid& grid, const ScalarFunction& c,
                             const ScalarFunction& p, double gamma,
                             double alpha) {
    if (!(gamma > 0.0) || !(alpha > 0.0)) {
        throw std::invalid_argument(
            "assemble_fhn_operator: gamma and alpha must be positive");
    }
    const int n = grid.n_nodes;
    Matrix a = Matrix::Zero(2 * n, 2 * n);
    a.topLeftCorner(n, n) = assemble_diffusion_operator(grid, c);
    for (int i = 0; i < n; ++i) {
        const double value = p(grid.node(i));
        if (!(value > 0.0)) {
            throw std::invalid_argument(
                "assemble_fhn_operator: p must be strictly positive");
        }
        a(i, i) -= value;
    }
    a.topRightCorner(n, n) = -Matrix::Identity(n, n);
    a.bottomLeftCorner(n, n) = gamma * Matrix::Identity(n, n);
    a.bottomRightCorner(n, n) = -alpha * Matrix::Identity(n, n);
    return a;
}

double dissipativity_rate(const SpaceLayout& layout, const Matrix& a) {
    if (a.rows() != layout.dim() || a.cols() != layout.dim()) {
        throw std::invalid_argument("dissipativity_rate: dimension mismatch");
    }
    if ((layout.metric_diagonal().array() <= 0.0).any()) {
        throw std::invalid_argument("dissipativity_rate: invalid weights");
    }
    const Matrix similar = layout.sqrt_metric().asDiagonal() * a *
                           layout.inv_sqrt_metric().asDiagonal();
    const Matrix sym = 0.5 * (similar + similar.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym,
                                                 Eigen::EigenvaluesOnly);
    return -solver.eigenvalues().maxCoeff();
}

OperatorBundle::OperatorBundle(LayoutPtr layout, Matrix a, double dt)
    : layout_(std::move(layout)), a_(std::move(a)), dt_(dt) {
    if (!layout_) {
        throw std::invalid_argument("OperatorBundle: null layout");
    }
    if (a_.rows() != layout_->dim() || a_.cols() != layout_->dim()) {
        throw std::invalid_argument("OperatorBundle: dimension mismatch");
    }
    auto pair = step_propagators(a_, dt_);
    e_step_ = std::move(pair.step);
    p1_step_ = std::move(pair.integral);
    omega_ = dissipativity_rate(*layout_, a_);
}

OperatorBundle build_propagators(LayoutPtr layout, Matrix a, double dt) {
    return OperatorBundle(std::move(layout), std::move(a), dt);
}

Vector apply_semigroup(const OperatorBundle& bundle, const Vector& x,
                       int steps) {
    if (x.size() != bundle.layout().dim()) {
        throw std::invalid_argument("apply_semigroup: dimension mismatch");
    }
    if (steps < 0) {
        throw std::invalid_argument("apply_semigroup: steps must be >= 0");
    }
    Vector y = x;
    for (int s = 0; s < steps; ++s) {
        y = bundle.step() * y;
    }
    return y;
}

}  // namespace levyexp
