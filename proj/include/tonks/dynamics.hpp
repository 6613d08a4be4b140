#pragma once
#include <vector>

#include "tonks/observables.hpp"

namespace tonks {

struct EvolutionResult {
    std::vector<double> times;
    SpatialGrid grid; // enlarged expansion box sharing the static spacing
    std::vector<Eigen::VectorXd> snapshots; // density per requested time
};

// Periodic box for ballistic expansion up to t_max. Keeps the static
// spacing and grows the half-width until three demands hold: the
// expanding cloud stays inside, the slow momentum tail shed by a bound
// state's cusp stays below the boundary-density target, and every grid
// momentum loops the box slower than once per run so wrapped copies
// cannot re-enter the observation window.
SpatialGrid plan_expansion_box(const Spectrum& spectrum, double t_max);

// All single-particle states at time t on the box: multiply by
// e^{-i k^2 t / 2} in the transform domain, nothing else.
Eigen::MatrixXcd evolve_states(const Spectrum& spectrum, const SpatialGrid& box,
                               double t);

EvolutionResult free_evolve(const Spectrum& spectrum, const std::vector<double>& times);

// Fringe contrast (rho_max - rho_min)/(rho_max + rho_min) over interior
// grid-local extrema with |x| <= window_half_width; 0 when the density
// has no interior local minimum there.
double fringe_visibility(const SpatialGrid& grid, const Eigen::VectorXd& density,
                         double window_half_width);

} // namespace tonks
