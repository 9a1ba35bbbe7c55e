#pragma once

#include <span>
#include <vector>

#include "levyexp/space.hpp"

namespace levyexp {

/// Pointwise polynomial drift: each active component applies its own scalar
/// polynomial g(v) = a0 + a1 v + ... + ad v^d to that component's values;
/// inactive components map to zero. Active polynomials must have odd degree
/// and a negative leading coefficient, which makes the one-sided gap
///   eta = max over active components of sup g'
/// finite. All operations are pure and the map is immutable.
class PolynomialMap {
  public:
    /// One coefficient vector per component; an empty vector marks the
    /// component inactive. Coefficients are in ascending-power order.
    explicit PolynomialMap(std::vector<Vector> per_component);

    /// The FitzHugh-Nagumo cubic -v(v-1)(v-xi) on component 0, zero on the
    /// rest.
    static PolynomialMap fhn_cubic(double xi, int components);
    /// g(v) = -v^3 on component 0, zero on the rest.
    static PolynomialMap pure_cubic(int components);
    static PolynomialMap zero(int components);

    int components() const { return static_cast<int>(per_component_.size()); }
    bool component_active(int c) const { return per_component_[c].size() > 0; }
    const Vector& coefficients(int c) const { return per_component_[c]; }
    int max_degree() const { return max_degree_; }
    bool is_zero() const { return max_degree_ < 0; }

    double eta() const { return eta_; }

    Vector eval(const Vector& u) const;

    /// j-th derivative contraction: per active component
    /// g^(j)(w(x)) * h1(x) * ... * hj(x); the zero field for j beyond the
    /// degree.
    Vector frechet(int order, const Vector& w,
                   std::span<const Vector> increments) const;
    Vector frechet1(const Vector& w, const Vector& h) const;

    /// Taylor polynomial sum_{j=0}^{order} (1/j!) g^(j)(w) h^j applied
    /// pointwise; exact for order >= degree.
    Vector taylor_eval(const Vector& w, const Vector& h, int order) const;

    /// Scalar evaluation helpers for one component's polynomial and its
    /// derivatives (used by the forcing assembly).
    double eval_scalar(int c, double v) const;
    double derivative_scalar(int c, int order, double v) const;

  private:
    int n_nodes_for(const Vector& u) const;

    std::vector<Vector> per_component_;
    // derivatives_[c][j] holds the coefficients of g_c^{(j)}, j = 0..degree.
    std::vector<std::vector<Vector>> derivatives_;
    int max_degree_;
    double eta_;
};

/// sup over v of g'(v) for one coefficient vector (ascending powers).
/// Requires odd degree with negative leading coefficient or degree <= 1.
double polynomial_derivative_sup(const Vector& coefficients);

}  // namespace levyexp
