#pragma once

#include <functional>

#include "levyexp/space.hpp"

namespace levyexp {

using ScalarFunction = std::function<double(double)>;

/// Conservative finite-difference discretization of d/dx(c(x) d/dx) on [0,1]
/// with zero-flux (Neumann) boundaries. The boundary rows are the half-cell
/// flux balances, which makes the matrix symmetric negative semidefinite in
/// the trapezoid-weighted inner product and annihilates constants exactly.
Matrix assemble_diffusion_operator(const SpatialGrid& grid,
                                   const ScalarFunction& c);

/// Block operator of the two-component FitzHugh-Nagumo system
///   [[ A0 - diag(p), -I ], [ gamma*I, -alpha*I ]]
/// with A0 the Neumann diffusion operator above. c and p must be strictly
/// positive on [0,1].
Matrix assemble_fhn_operator(const SpatialGrid& grid, const ScalarFunction& c,
                             const ScalarFunction& p, double gamma,
                             double alpha);

/// Largest decay rate omega such that <Ax,x>_w <= -omega |x|_w^2, computed as
/// minus the top eigenvalue of the symmetric part of A in the weighted metric.
/// A non-positive result means A is not strictly dissipative in this metric.
double dissipativity_rate(const SpaceLayout& layout, const Matrix& a);

/// Generator together with its exact one-step propagators
///   E  = exp(dt*A),   P1 = int_0^dt exp(s*A) ds,
/// immutable after construction and shareable across threads.
class OperatorBundle {
  public:
    OperatorBundle(LayoutPtr layout, Matrix a, double dt);

    const SpaceLayout& layout() const { return *layout_; }
    const LayoutPtr& layout_ptr() const { return layout_; }
    const Matrix& generator() const { return a_; }
    const Matrix& step() const { return e_step_; }
    const Matrix& step_integral() const { return p1_step_; }
    double dt() const { return dt_; }
    double omega() const { return omega_; }
    /// Rounding-level rates do not count as strict dissipativity.
    bool strictly_dissipative() const {
        return omega_ > 1e-12 * std::max(1.0, a_.cwiseAbs().maxCoeff());
    }

  private:
    LayoutPtr layout_;
    Matrix a_;
    double dt_;
    Matrix e_step_;
    Matrix p1_step_;
    double omega_;
};

OperatorBundle build_propagators(LayoutPtr layout, Matrix a, double dt);

/// Apply the step propagator `steps` times.
Vector apply_semigroup(const OperatorBundle& bundle, const Vector& x,
                       int steps);

}  // namespace levyexp
