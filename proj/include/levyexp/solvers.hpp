#pragma once

#include <stdexcept>

#include "levyexp/levy.hpp"
#include "levyexp/operators.hpp"
#include "levyexp/polynomial.hpp"
#include "levyexp/trajectory.hpp"

namespace levyexp {

/// Raised when a state norm crosses the guard threshold. Under a strictly
/// dissipative configuration (omega - eta > 0) this cannot happen, so it
/// signals a misconfigured problem; the message reports both rates.
class BlowupError : public std::runtime_error {
  public:
    BlowupError(int step, double norm, double omega, double eta);
    int step;
};

inline constexpr double kBlowupThreshold = 1e8;

/// Exponential Euler for dy = (A y + F(y)) dt:
///   y_{m+1} = E y_m + P1 F(y_m).
/// Exact on the linear part, first order in dt overall.
Trajectory solve_deterministic(const OperatorBundle& bundle,
                               const PolynomialMap& f, const Vector& u0,
                               double horizon);

/// Response of the linear system to the noise alone:
///   Z_{m+1} = E Z_m + E sqrtQ dL_m,  Z_0 = 0,
/// with every jump of a step propagated by that step's full propagator.
Trajectory stochastic_convolution(const OperatorBundle& bundle,
                                  const NoiseCovariance& q,
                                  const LevyPath& path);

/// Full equation du = (A u + F(u)) dt + eps sqrtQ dL on one noise path:
///   u_{m+1} = E u_m + P1 F(u_m) + eps E sqrtQ dL_m.
/// With eps = 0 the noise injection is skipped entirely, so the result is
/// bit-identical to solve_deterministic.
Trajectory solve_sde(const OperatorBundle& bundle, const PolynomialMap& f,
                     const NoiseCovariance& q, double epsilon,
                     const Vector& u0, const LevyPath& path);

}  // namespace levyexp
