#pragma once
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "tonks/grid.hpp"

namespace tonks {

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TrapConfig {
    double kappa = 0.0;
    int n_particles = 1;
};

enum class Parity { even, odd };

struct EigenState {
    int index = 0;
    Parity parity = Parity::even;
    double energy = 0.0;
    // Stored as a log: the raw Kummer factor spans hundreds of orders of
    // magnitude for deeply bound states, so the linear constant can
    // overflow while the normalized product stays O(1).
    double log_norm = 0.0;

    double norm_constant() const { return std::exp(log_norm); }
};

struct Spectrum {
    TrapConfig config;
    SpatialGrid grid;
    std::vector<EigenState> states;
    // samples(a, n) = psi_n(x_a), normalized so the weighted grid norm of
    // every column is exactly 1.
    Eigen::MatrixXd samples;

    int n_states() const { return static_cast<int>(states.size()); }
};

// Right-hand side of the even-state quantization relation,
// kappa(E) = 2 Gamma(3/4 - E/2) / Gamma(1/4 - E/2).
// Denominator poles (the unperturbed even levels) map to 0; numerator
// poles (the odd levels) throw.
double kappa_of_energy(double energy);

// Energy of the even eigenstate with quantum number n (n = 0, 2, 4, ...)
// at delta strength kappa. Root-bracketed per level: E_0 in
// (-kappa^2/2 - 2, 1/2], E_n in (n - 1/2, n + 1/2] for n >= 2.
double solve_even_energy(double kappa, int n);

// Pointwise eigenstate evaluation from the stored normalization constant.
double eval_eigenstate(const EigenState& state, const TrapConfig& config, double x);

// Grid policy: half-width covering the classical turning point of the
// highest occupied state with margin, spacing fine enough to resolve the
// bound-state exponential e^{-kappa |x|}.
SpatialGrid default_grid(const TrapConfig& config);

Spectrum build_spectrum(const TrapConfig& config, const SpatialGrid& grid);

} // namespace tonks
