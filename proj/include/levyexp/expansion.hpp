#pragma once

#include <span>
#include <vector>

#include "levyexp/solvers.hpp"

namespace levyexp {

/// One term of the order-k forcing: a derivative order j >= 2, an ordered
/// tuple of part indices summing to k, and the Taylor weight 1/j!.
struct CompositionEntry {
    int slots;
    std::vector<int> parts;
    double coefficient;
};

struct CompositionTable {
    int order;
    std::vector<CompositionEntry> entries;
};

/// All ordered compositions of k into j >= 2 parts, each part >= 1, with
/// coefficient 1/j!. Entry count is 2^{k-1} - 1. Guarded to k <= 12.
CompositionTable enumerate_compositions(int k);

/// Order-k nonlinear feedback evaluated at one time slice:
///   sum over entries of (1/j!) * F^(j)(base)[corr_{i_1}, ..., corr_{i_j}],
/// i.e. exactly the epsilon^k Taylor coefficient of F(base + sum eps^i
/// corr_i) beyond the linear term.
Vector taylor_forcing(const PolynomialMap& f, const CompositionTable& table,
                      const Vector& base_state,
                      std::span<const Vector> correction_states);

/// First-order correction: linearized flow along phi driven by the noise,
///   v_{m+1} = E v_m + P1 F'(phi_m)[v_m] + E sqrtQ dL_m,  v_0 = 0.
Trajectory solve_first_correction(const OperatorBundle& bundle,
                                  const PolynomialMap& f,
                                  const NoiseCovariance& q,
                                  const Trajectory& phi, const LevyPath& path);

/// Order-k correction (k >= 2): linearized flow along phi driven by the
/// order-k forcing built from the lower corrections,
///   w_{m+1} = E w_m + P1 (F'(phi_m)[w_m] + Forcing_k(m)),  w_0 = 0.
Trajectory solve_correction(const OperatorBundle& bundle,
                            const PolynomialMap& f, int k,
                            const Trajectory& phi,
                            std::span<const Trajectory> lower);

/// Deterministic base trajectory plus corrections u_1..u_n for one noise
/// path. Epsilon never enters: one set serves every noise strength.
struct ExpansionSet {
    int order = 0;
    Trajectory phi;
    std::vector<Trajectory> corrections;

    const Trajectory& correction(int k) const { return corrections.at(k - 1); }
};

ExpansionSet expand(const OperatorBundle& bundle, const PolynomialMap& f,
                    const NoiseCovariance& q, const Vector& u0,
                    const LevyPath& path, int order);

}  // namespace levyexp
