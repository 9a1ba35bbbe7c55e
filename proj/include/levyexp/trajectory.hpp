#pragma once

#include <string>
#include <vector>

#include "levyexp/space.hpp"

namespace levyexp {

/// States on the uniform time grid t_m = m*dt, stored one column per time.
struct Trajectory {
    double dt = 0.0;
    double horizon = 0.0;
    std::string scheme;
    std::vector<double> times;  // size steps+1
    Matrix states;              // dim x (steps+1)

    int steps() const { return static_cast<int>(times.size()) - 1; }
    Eigen::Ref<const Vector> state(int m) const { return states.col(m); }
    Eigen::Ref<const Vector> final_state() const {
        return states.col(states.cols() - 1);
    }
};

Trajectory make_trajectory(int dim, double dt, int steps, std::string scheme);

/// Number of steps if dt divides the horizon (to rounding), else throws.
int step_count(double horizon, double dt);

}  // namespace levyexp
