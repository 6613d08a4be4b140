#pragma once
#include <Eigen/Core>

namespace tonks {

// Uniform symmetric grid on [-L, L] with trapezoidal quadrature weights.
// M is kept odd so that x = 0 is a node; the attractive delta pins sharp
// structure there and it must be sampled exactly.
struct SpatialGrid {
    double half_width = 0.0;
    Eigen::VectorXd x;
    Eigen::VectorXd w;

    long n_points() const { return x.size(); }
    double spacing() const { return x[1] - x[0]; }

    static SpatialGrid uniform(double half_width, long n_points);
};

} // namespace tonks
