#pragma once
#include "tonks/spectrum.hpp"

namespace tonks {

enum class Species { fermion, boson };

struct DensityProfile {
    SpatialGrid grid;
    Eigen::VectorXd values;
    int particle_number = 0;
};

struct DensityMatrix {
    SpatialGrid grid;
    Eigen::MatrixXd entries;
    Species species = Species::fermion;
    int trace_target = 0;
};

// rho(x_a) = sum_n psi_n(x_a)^2, identical for fermions and hard-core bosons.
DensityProfile density(const Spectrum& spectrum);

// Two-particle distribution D(x1, x2) at arbitrary points through the
// rank-reduced identity D = rho(x1) rho(x2) - Delta(x1,x2)^2.
double pair_distribution(const Spectrum& spectrum, double x1, double x2);

// Same quantity as the explicit antisymmetrized double sum; O(N^2) per
// point, kept as an independent route for verification.
double pair_distribution_double_sum(const Spectrum& spectrum, double x1, double x2);

// D over all grid pairs at once.
Eigen::MatrixXd pair_distribution_grid(const Spectrum& spectrum);

// rho_F(x_a, x_b) = sum_n psi_n(x_a) psi_n(x_b).
DensityMatrix fermi_rspdm(const Spectrum& spectrum);

// Exact max-norm of the grid-quadrature idempotency defect
//   max_ab | int rho_F(x_a, s) rho_F(s, x_b) ds - rho_F(x_a, x_b) |
// computed in factored form with Cauchy-Schwarz pruning, so very fine
// grids never materialize an M x M product.
double fermi_idempotency_residual(const Spectrum& spectrum);

} // namespace tonks
