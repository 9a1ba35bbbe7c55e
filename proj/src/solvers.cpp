#include "levyexp/solvers.hpp"

#include <cmath>
#include <string>

namespace levyexp {

namespace {

std::string blowup_message(int step, double norm, double omega, double eta) {
    return "state norm " + std::to_string(norm) + " exceeded guard at step " +
           std::to_string(step) +
           "; the configuration is likely not dissipative (omega=" +
           std::to_string(omega) + ", eta=" + std::to_string(eta) + ")";
}

}  // namespace

BlowupError::BlowupError(int step_, double norm, double omega, double eta)
    : std::runtime_error(blowup_message(step_, norm, omega, eta)),
      step(step_) {}

Trajectory make_trajectory(int dim, double dt, int steps, std::string scheme) {
    Trajectory traj;
    traj.dt = dt;
    traj.horizon = steps * dt;
    traj.scheme = std::move(scheme);
    traj.times.resize(steps + 1);
    for (int m = 0; m <= steps; ++m) {
        traj.times[m] = m * dt;
    }
    traj.states.setZero(dim, steps + 1);
    return traj;
}

int step_count(double horizon, double dt) {
    if (!(dt > 0.0) || !(horizon > 0.0)) {
        throw std::invalid_argument("step_count: need positive horizon and dt");
    }
    const int steps = static_cast<int>(std::llround(horizon / dt));
    if (steps < 1 ||
        std::abs(steps * dt - horizon) > 1e-9 * std::max(1.0, horizon)) {
        throw std::invalid_argument("step_count: dt does not divide horizon");
    }
    return steps;
}

Trajectory solve_deterministic(const OperatorBundle& bundle,
                               const PolynomialMap& f, const Vector& u0,
                               double horizon) {
    const int dim = bundle.layout().dim();
    if (u0.size() != dim) {
        throw std::invalid_argument("solve_deterministic: dimension mismatch");
    }
    const int steps = step_count(horizon, bundle.dt());
    Trajectory traj = make_trajectory(dim, bundle.dt(), steps, "expeuler");
    traj.states.col(0) = u0;
    Vector y = u0;
    for (int m = 0; m < steps; ++m) {
        y = bundle.step() * y + bundle.step_integral() * f.eval(y);
        if (!(bundle.layout().norm(y) <= kBlowupThreshold)) {
            throw BlowupError(m + 1, bundle.layout().norm(y), bundle.omega(),
                              f.eta());
        }
        traj.states.col(m + 1) = y;
    }
    return traj;
}

Trajectory stochastic_convolution(const OperatorBundle& bundle,
                                  const NoiseCovariance& q,
                                  const LevyPath& path) {
    const int dim = bundle.layout().dim();
    if (path.dim != dim || q.diagonal().size() != dim) {
        throw std::invalid_argument(
            "stochastic_convolution: dimension mismatch");
    }
    const int steps = step_count(path.horizon, bundle.dt());
    const auto increments = bin_increments(path, bundle.dt());
    Trajectory traj = make_trajectory(dim, bundle.dt(), steps, "expeuler");
    Vector z = Vector::Zero(dim);
    for (int m = 0; m < steps; ++m) {
        z = bundle.step() * z + bundle.step() * q.apply_sqrt(increments[m]);
        traj.states.col(m + 1) = z;
    }
    return traj;
}

Trajectory solve_sde(const OperatorBundle& bundle, const PolynomialMap& f,
                     const NoiseCovariance& q, double epsilon,
                     const Vector& u0, const LevyPath& path) {
    const int dim = bundle.layout().dim();
    if (u0.size() != dim || path.dim != dim || q.diagonal().size() != dim) {
        throw std::invalid_argument("solve_sde: dimension mismatch");
    }
    if (epsilon < 0.0) {
        throw std::invalid_argument("solve_sde: epsilon must be nonnegative");
    }
    const int steps = step_count(path.horizon, bundle.dt());
    const auto increments = bin_increments(path, bundle.dt());
    Trajectory traj = make_trajectory(dim, bundle.dt(), steps, "expeuler");
    traj.states.col(0) = u0;
    Vector y = u0;
    for (int m = 0; m < steps; ++m) {
        y = bundle.step() * y + bundle.step_integral() * f.eval(y);
        if (epsilon != 0.0) {
            y += epsilon * (bundle.step() * q.apply_sqrt(increments[m]));
        }
        if (!(bundle.layout().norm(y) <= kBlowupThreshold)) {
            throw BlowupError(m + 1, bundle.layout().norm(y), bundle.omega(),
                              f.eta());
        }
        traj.states.col(m + 1) = y;
    }
    return traj;
}

}  // namespace levyexp
