#pragma once
#include <vector>

#include "tonks/observables.hpp"

namespace tonks {

struct OverlapCumulative {
    SpatialGrid grid;
    // c[a](i,j) = running trapezoid integral of psi_i psi_j from -L to x_a.
    std::vector<Eigen::MatrixXd> c;
};

struct OrbitalDecomposition {
    SpatialGrid grid;
    Eigen::VectorXd occupations; // descending, clamped to 0 below 1e-12
    Eigen::MatrixXd orbitals;    // columns phi_j for every occupation > 1e-12
    double min_eigenvalue = 0.0; // smallest raw eigenvalue, before clamping
    int particle_number = 0;
};

OverlapCumulative cumulative_overlaps(const Spectrum& spectrum);

// One matrix element rho_B(x_a, x_b) of the hard-core boson density matrix.
double bose_rspdm_entry(const Spectrum& spectrum, const OverlapCumulative& overlaps,
                        long a, long b);

DensityMatrix bose_rspdm(const Spectrum& spectrum, const OverlapCumulative& overlaps);

// Occupation numbers and natural orbitals from the weighted symmetric
// eigenproblem; exploits the parity symmetry of the trap by splitting into
// even and odd blocks of half the size.
OrbitalDecomposition natural_orbitals(const DensityMatrix& rspdm);

double occupation_fraction(const OrbitalDecomposition& decomposition);

} // namespace tonks
