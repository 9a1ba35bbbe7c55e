#pragma once

#include "levyexp/space.hpp"

namespace levyexp {

/// Dense matrix exponential by Pade approximation with scaling and squaring
/// (Higham 2005). Suitable for the moderate dimensions used here.
Matrix matrix_exponential(const Matrix& a);

/// Pair (exp(dt*A), int_0^dt exp(s*A) ds) computed from one exponential of
/// the augmented block matrix [[A, I], [0, 0]] scaled by dt. Avoids any
/// inversion of A, which is singular for pure-Neumann diffusion blocks.
struct PropagatorPair {
    Matrix step;      // exp(dt*A)
    Matrix integral;  // int_0^dt exp(s*A) ds
};

PropagatorPair step_propagators(const Matrix& a, double dt);

}  // namespace levyexp
