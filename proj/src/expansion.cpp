#include "levyexp/expansion.hpp"

#include <stdexcept>

namespace levyexp {

CompositionTable enumerate_compositions(int k) {
    if (k < 2 || k > 12) {
        throw std::invalid_argument(
            "enumerate_compositions: order must be in [2, 12]");
    }
    CompositionTable table;
    table.order = k;
    std::vector<double> inv_factorial(k + 1, 1.0);
    for (int j = 1; j <= k; ++j) {
        inv_factorial[j] = inv_factorial[j - 1] / j;
    }
    std::vector<int> parts;
    auto descend = [&](auto&& self, int remaining) -> void {
        if (remaining == 0) {
            const int slots = static_cast<int>(parts.size());
            if (slots >= 2) {
                table.entries.push_back({slots, parts, inv_factorial[slots]});
            }
            return;
        }
        for (int part = 1; part <= remaining; ++part) {
            parts.push_back(part);
            self(self, remaining - part);
            parts.pop_back();
        }
    };
    descend(descend, k);
    return table;
}

Vector taylor_forcing(const PolynomialMap& f, const CompositionTable& table,
                      const Vector& base_state,
                      std::span<const Vector> correction_states) {
    if (static_cast<int>(correction_states.size()) < table.order - 1) {
        throw std::invalid_argument(
            "taylor_forcing: need corrections up to order k-1");
    }
    const int m = f.components();
    if (base_state.size() % m != 0) {
        throw std::invalid_argument("taylor_forcing: component mismatch");
    }
    const int n = static_cast<int>(base_state.size()) / m;
    Vector out = Vector::Zero(base_state.size());

    // Derivative values g^{(j)}(base) are shared by every entry with the
    // same slot count; precompute them per component.
    const int max_slots = std::min(table.order, f.max_degree());
    if (max_slots < 2) {
        return out;
    }
    Matrix derivative_values(base_state.size(), max_slots - 1);
    for (int c = 0; c < m; ++c) {
        for (int j = 2; j <= max_slots; ++j) {
            for (int i = 0; i < n; ++i) {
                const int idx = c * n + i;
                derivative_values(idx, j - 2) =
                    f.derivative_scalar(c, j, base_state(idx));
            }
        }
    }

    Vector product(base_state.size());
    for (const CompositionEntry& entry : table.entries) {
        if (entry.slots > max_slots) continue;
        product = correction_states[entry.parts[0] - 1];
        for (std::size_t l = 1; l < entry.parts.size(); ++l) {
            product.array() *=
                correction_states[entry.parts[l] - 1].array();
        }
        out.array() += entry.coefficient *
                       derivative_values.col(entry.slots - 2).array() *
                       product.array();
    }
    // Inactive components have identically zero derivatives, so they stay 0.
    return out;
}

Trajectory solve_first_correction(const OperatorBundle& bundle,
                                  const PolynomialMap& f,
                                  const NoiseCovariance& q,
                                  const Trajectory& phi,
                                  const LevyPath& path) {
    const int dim = bundle.layout().dim();
    if (phi.states.rows() != dim || path.dim != dim) {
        throw std::invalid_argument(
            "solve_first_correction: dimension mismatch");
    }
    const int steps = step_count(path.horizon, bundle.dt());
    if (phi.steps() != steps) {
        throw std::invalid_argument(
            "solve_first_correction: phi grid does not match the path");
    }
    const auto increments = bin_increments(path, bundle.dt());
    Trajectory traj = make_trajectory(dim, bundle.dt(), steps, "expeuler");
    Vector v = Vector::Zero(dim);
    for (int m = 0; m < steps; ++m) {
        v = bundle.step() * v +
            bundle.step_integral() * f.frechet1(phi.state(m), v) +
            bundle.step() * q.apply_sqrt(increments[m]);
        if (!(bundle.layout().norm(v) <= kBlowupThreshold)) {
            throw BlowupError(m + 1, bundle.layout().norm(v), bundle.omega(),
                              f.eta());
        }
        traj.states.col(m + 1) = v;
    }
    return traj;
}

Trajectory solve_correction(const OperatorBundle& bundle,
                            const PolynomialMap& f, int k,
                            const Trajectory& phi,
                            std::span<const Trajectory> lower) {
    if (k < 2) {
        throw std::invalid_argument("solve_correction: k must be >= 2");
    }
    if (static_cast<int>(lower.size()) < k - 1) {
        throw std::invalid_argument(
            "solve_correction: corrections 1..k-1 required");
    }
    const int dim = bundle.layout().dim();
    const int steps = phi.steps();
    for (int i = 0; i < k - 1; ++i) {
        if (lower[i].steps() != steps || lower[i].states.rows() != dim) {
            throw std::invalid_argument(
                "solve_correction: trajectory grids do not match");
        }
    }
    const CompositionTable table = enumerate_compositions(k);
    Trajectory traj = make_trajectory(dim, bundle.dt(), steps, "expeuler");
    Vector w = Vector::Zero(dim);
    std::vector<Vector> slice(k - 1);
    for (int m = 0; m < steps; ++m) {
        for (int i = 0; i < k - 1; ++i) {
            slice[i] = lower[i].state(m);
        }
        const Vector forcing = taylor_forcing(f, table, phi.state(m), slice);
        w = bundle.step() * w +
            bundle.step_integral() * (f.frechet1(phi.state(m), w) + forcing);
        if (!(bundle.layout().norm(w) <= kBlowupThreshold)) {
            throw BlowupError(m + 1, bundle.layout().norm(w), bundle.omega(),
                              f.eta());
        }
        traj.states.col(m + 1) = w;
    }
    return traj;
}

ExpansionSet expand(const OperatorBundle& bundle, const PolynomialMap& f,
                    const NoiseCovariance& q, const Vector& u0,
                    const LevyPath& path, int order) {
    if (order < 1) {
        throw std::invalid_argument("expand: order must be >= 1");
    }
    ExpansionSet set;
    set.order = order;
    set.phi = solve_deterministic(bundle, f, u0, path.horizon);
    set.corrections.reserve(order);
    set.corrections.push_back(
        solve_first_correction(bundle, f, q, set.phi, path));
    for (int k = 2; k <= order; ++k) {
        set.corrections.push_back(solve_correction(
            bundle, f, k, set.phi,
            std::span<const Trajectory>(set.corrections.data(), k - 1)));
    }
    return set;
}

}  // namespace levyexp
