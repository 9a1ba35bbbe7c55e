#include "levyexp/polynomial.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace levyexp {

namespace {

int trimmed_degree(const Vector& coeffs) {
    int d = static_cast<int>(coeffs.size()) - 1;
    while (d >= 0 && coeffs(d) == 0.0) {
        --d;
    }
    return d;
}

Vector derivative_coefficients(const Vector& coeffs) {
    const int d = static_cast<int>(coeffs.size()) - 1;
    if (d <= 0) {
        return Vector::Zero(1);
    }
    Vector out(d);
    for (int i = 0; i < d; ++i) {
        out(i) = (i + 1) * coeffs(i + 1);
    }
    return out;
}

double horner(const Vector& coeffs, double v) {
    double acc = 0.0;
    for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i) {
        acc = acc * v + coeffs(i);
    }
    return acc;
}

std::vector<double> real_polynomial_roots(const Vector& coeffs) {
    const int d = trimmed_degree(coeffs);
    std::vector<double> roots;
    if (d < 1) {
        return roots;
    }
    if (d == 1) {
        roots.push_back(-coeffs(0) / coeffs(1));
        return roots;
    }
    Matrix companion = Matrix::Zero(d, d);
    for (int i = 0; i < d - 1; ++i) {
        companion(i + 1, i) = 1.0;
    }
    for (int i = 0; i < d; ++i) {
        companion(i, d - 1) = -coeffs(i) / coeffs(d);
    }
    Eigen::EigenSolver<Matrix> solver(companion);
    const auto values = solver.eigenvalues();
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        const double re = values(i).real();
        const double im = values(i).imag();
        if (std::abs(im) <= 1e-9 * (1.0 + std::abs(re))) {
            roots.push_back(re);
        }
    }
    return roots;
}

}  // namespace

double polynomial_derivative_sup(const Vector& coefficients) {
    const int d = trimmed_degree(coefficients);
    if (d <= 0) {
        return 0.0;
    }
    if (d == 1) {
        return coefficients(1);
    }
    if (d % 2 == 0 || coefficients(d) >= 0.0) {
        throw std::invalid_argument(
            "polynomial_derivative_sup: sup g' is not finite (need odd "
            "degree with negative leading coefficient)");
    }
    // g' has even degree and tends to -inf both ways; its global maximum sits
    // at a critical point, i.e. a real root of g''.
    const Vector g1 = derivative_coefficients(coefficients);
    const Vector g2 = derivative_coefficients(g1);
    double best = -std::numeric_limits<double>::infinity();
    for (double root : real_polynomial_roots(g2)) {
        best = std::max(best, horner(g1, root));
    }
    return best;
}

PolynomialMap::PolynomialMap(std::vector<Vector> per_component)
    : per_component_(std::move(per_component)) {
    if (per_component_.empty()) {
        throw std::invalid_argument("PolynomialMap: no components");
    }
    max_degree_ = -1;
    eta_ = 0.0;
    bool any_active = false;
    derivatives_.resize(per_component_.size());
    for (std::size_t c = 0; c < per_component_.size(); ++c) {
        const int d = trimmed_degree(per_component_[c]);
        if (d < 0) {
            per_component_[c] = Vector();
            continue;
        }
        if (d >= 2 && (d % 2 == 0 || per_component_[c](d) >= 0.0)) {
            throw std::invalid_argument(
                "PolynomialMap: active components need odd degree and a "
                "negative leading coefficient");
        }
        const double sup = polynomial_derivative_sup(per_component_[c]);
        eta_ = any_active ? std::max(eta_, sup) : sup;
        any_active = true;
        max_degree_ = std::max(max_degree_, d);
        auto& ders = derivatives_[c];
        ders.push_back(per_component_[c].head(d + 1));
        for (int j = 1; j <= d; ++j) {
            ders.push_back(derivative_coefficients(ders.back()));
        }
    }
    if (!any_active) {
        eta_ = 0.0;
    }
}

PolynomialMap PolynomialMap::fhn_cubic(double xi, int components) {
    // -v(v-1)(v-xi) = -xi v + (1+xi) v^2 - v^3
    Vector g(4);
    g << 0.0, -xi, 1.0 + xi, -1.0;
    std::vector<Vector> per(components);
    per[0] = g;
    return PolynomialMap(std::move(per));
}

PolynomialMap PolynomialMap::pure_cubic(int components) {
    Vector g(4);
    g << 0.0, 0.0, 0.0, -1.0;
    std::vector<Vector> per(components);
    per[0] = g;
    return PolynomialMap(std::move(per));
}

PolynomialMap PolynomialMap::zero(int components) {
    return PolynomialMap(std::vector<Vector>(components));
}

int PolynomialMap::n_nodes_for(const Vector& u) const {
    const int m = components();
    if (u.size() % m != 0) {
        throw std::invalid_argument("PolynomialMap: component count mismatch");
    }
    return static_cast<int>(u.size()) / m;
}

Vector PolynomialMap::eval(const Vector& u) const {
    const int n = n_nodes_for(u);
    Vector out = Vector::Zero(u.size());
    for (int c = 0; c < components(); ++c) {
        if (!component_active(c)) continue;
        const Vector& coeffs = derivatives_[c][0];
        for (int i = 0; i < n; ++i) {
            out(c * n + i) = horner(coeffs, u(c * n + i));
        }
    }
    return out;
}

Vector PolynomialMap::frechet(int order, const Vector& w,
                              std::span<const Vector> increments) const {
    if (order < 1) {
        throw std::invalid_argument("PolynomialMap::frechet: order must be >= 1");
    }
    if (static_cast<int>(increments.size()) != order) {
        throw std::invalid_argument(
            "PolynomialMap::frechet: increment count must equal order");
    }
    const int n = n_nodes_for(w);
    for (const Vector& h : increments) {
        if (h.size() != w.size()) {
            throw std::invalid_argument(
                "PolynomialMap::frechet: increment dimension mismatch");
        }
    }
    Vector out = Vector::Zero(w.size());
    for (int c = 0; c < components(); ++c) {
        if (!component_active(c)) continue;
        const auto& ders = derivatives_[c];
        if (order >= static_cast<int>(ders.size())) continue;
        const Vector& coeffs = ders[order];
        for (int i = 0; i < n; ++i) {
            const int idx = c * n + i;
            double value = horner(coeffs, w(idx));
            for (const Vector& h : increments) {
                value *= h(idx);
            }
            out(idx) = value;
        }
    }
    return out;
}

Vector PolynomialMap::frechet1(const Vector& w, const Vector& h) const {
    return frechet(1, w, std::span<const Vector>(&h, 1));
}

Vector PolynomialMap::taylor_eval(const Vector& w, const Vector& h,
                                  int order) const {
    if (order < 0) {
        throw std::invalid_argument(
            "PolynomialMap::taylor_eval: order must be >= 0");
    }
    if (h.size() != w.size()) {
        throw std::invalid_argument(
            "PolynomialMap::taylor_eval: dimension mismatch");
    }
    const int n = n_nodes_for(w);
    Vector out = Vector::Zero(w.size());
    for (int c = 0; c < components(); ++c) {
        if (!component_active(c)) continue;
        const auto& ders = derivatives_[c];
        const int top = std::min<int>(order, static_cast<int>(ders.size()) - 1);
        for (int i = 0; i < n; ++i) {
            const int idx = c * n + i;
            double acc = 0.0;
            double h_power = 1.0;
            double inv_factorial = 1.0;
            for (int j = 0; j <= top; ++j) {
                if (j > 0) {
                    h_power *= h(idx);
                    inv_factorial /= j;
                }
                acc += inv_factorial * h_power * horner(ders[j], w(idx));
            }
            out(idx) = acc;
        }
    }
    return out;
}

double PolynomialMap::eval_scalar(int c, double v) const {
    if (!component_active(c)) return 0.0;
    return horner(derivatives_[c][0], v);
}

double PolynomialMap::derivative_scalar(int c, int order, double v) const {
    if (!component_active(c)) return 0.0;
    const auto& ders = derivatives_[c];
    if (order >= static_cast<int>(ders.size())) return 0.0;
    return horner(ders[order], v);
}

}  // namespace levyexp
