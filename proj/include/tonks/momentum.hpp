#pragma once
#include <complex>

#include "tonks/bose_rspdm.hpp"

namespace tonks {

// Uniform symmetric momentum window with trapezoidal weights; odd point
// count so k = 0 is a node.
struct MomentumGrid {
    double k_max = 0.0;
    Eigen::VectorXd k;
    Eigen::VectorXd w;

    long n_points() const { return k.size(); }
    double spacing() const { return k[1] - k[0]; }

    static MomentumGrid uniform(double k_max, long n_points);
};

struct MomentumDistribution {
    MomentumGrid grid;
    Eigen::VectorXd values;
    Species species = Species::fermion;
    int particle_number = 0;
};

// Window wide enough for the occupied part of the spectrum; when the
// attractive center binds a state, its exponential cusp feeds a slow
// k^-4 tail and the window is stretched to ten times the delta strength.
MomentumGrid default_momentum_grid(const TrapConfig& config);

// mu(k) = (2 pi)^{-1/2} integral phi(x) e^{-ikx} dx by direct quadrature.
Eigen::VectorXcd orbital_fourier(const Eigen::VectorXd& orbital, const SpatialGrid& grid,
                                 const MomentumGrid& momentum_grid);

// n_F(k): every trap eigenstate contributes with unit weight.
MomentumDistribution momentum_distribution(const Spectrum& spectrum,
                                           const MomentumGrid& momentum_grid);

// n_B(k): natural orbitals weighted by their occupations.
MomentumDistribution momentum_distribution(const OrbitalDecomposition& decomposition,
                                           const MomentumGrid& momentum_grid);

} // namespace tonks
