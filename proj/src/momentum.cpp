#include "tonks/momentum.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tonks {

namespace {

constexpr double kTableBudgetDoubles = 2.5e8;

// Weighted transform tables, c(b,a) = w_a cos(k_b x_a) and the sine
// analogue, so row b dotted with orbital samples gives the quadrature
// Fourier integral at k_b.
void fourier_tables(const SpatialGrid& grid, const MomentumGrid& momentum_grid,
                    Eigen::MatrixXd& c, Eigen::MatrixXd& s) {
    const long mx = grid.n_points();
    const long mk = momentum_grid.n_points();
    const double nyquist = std::numbers::pi / grid.spacing();
    if (momentum_grid.k_max > nyquist * (1.0 + 1e-12))
        throw std::invalid_argument(
            "momentum window exceeds the Nyquist limit of the spatial grid");
    if (static_cast<double>(mx) * mk > kTableBudgetDoubles)
        throw std::length_error("fourier tables exceed memory budget");

    c.resize(mk, mx);
    s.resize(mk, mx);
#pragma omp parallel for schedule(static)
    for (long b = 0; b < mk; ++b) {
        const double kb = momentum_grid.k[b];
        for (long a = 0; a < mx; ++a) {
            const double phase = kb * grid.x[a];
            c(b, a) = grid.w[a] * std::cos(phase);
            s(b, a) = grid.w[a] * std::sin(phase);
        }
    }
}

MomentumDistribution weighted_distribution(const Eigen::MatrixXd& orbitals,
                                           const Eigen::VectorXd& weights,
                                           const SpatialGrid& grid,
                                           const MomentumGrid& momentum_grid) {
    Eigen::MatrixXd c, s;
    fourier_tables(grid, momentum_grid, c, s);
    Eigen::MatrixXd re = c * orbitals;
    Eigen::MatrixXd im = s * orbitals;
    MomentumDistribution dist;
    dist.grid = momentum_grid;
    dist.values = (re.array().square().matrix() * weights +
                   im.array().square().matrix() * weights) /
                  (2.0 * std::numbers::pi);
    return dist;
}

} // namespace

MomentumGrid MomentumGrid::uniform(double k_max, long n_points) {
    if (!(k_max > 0.0))
        throw std::invalid_argument("momentum window must have positive extent");
    if (n_points < 17 || n_points % 2 == 0)
        throw std::invalid_argument("momentum grid wants an odd point count, at least 17");
    MomentumGrid g;
    g.k_max = k_max;
    const long center = (n_points - 1) / 2;
    const double h = k_max / static_cast<double>(center);
    g.k.resize(n_points);
    for (long b = 0; b < n_points; ++b)
        g.k[b] = static_cast<double>(b - center) * h;
    g.w = Eigen::VectorXd::Constant(n_points, h);
    g.w[0] = 0.5 * h;
    g.w[n_points - 1] = 0.5 * h;
    return g;
}

MomentumGrid default_momentum_grid(const TrapConfig& config) {
    const int top = config.n_particles - 1;
    const double e_top = (top % 2 == 1) ? top + 0.5
                                        : solve_even_energy(config.kappa, top);
    double k_max = std::sqrt(2.0 * std::max(e_top, 0.0)) + 5.0;
    if (solve_even_energy(config.kappa, 0) < 0.0)
        k_max = std::max(k_max, 10.0 * config.kappa);
    return MomentumGrid::uniform(k_max, 1001);
}

Eigen::VectorXcd orbital_fourier(const Eigen::VectorXd& orbital, const SpatialGrid& grid,
                                 const MomentumGrid& momentum_grid) {
    if (orbital.size() != grid.n_points())
        throw std::invalid_argument("orbital samples do not match the spatial grid");
    const double nyquist = std::numbers::pi / grid.spacing();
    if (momentum_grid.k_max > nyquist * (1.0 + 1e-12))
        throw std::invalid_argument(
            "momentum window exceeds the Nyquist limit of the spatial grid");

    const long mk = momentum_grid.n_points();
    const long mx = grid.n_points();
    Eigen::VectorXcd mu(mk);
    const double scale = 1.0 / std::sqrt(2.0 * std::numbers::pi);
#pragma omp parallel for schedule(static)
    for (long b = 0; b < mk; ++b) {
        const double kb = momentum_grid.k[b];
        double re = 0.0, im = 0.0;
        for (long a = 0; a < mx; ++a) {
            const double phase = kb * grid.x[a];
            const double f = grid.w[a] * orbital[a];
            re += f * std::cos(phase);
            im -= f * std::sin(phase);
        }
        mu[b] = std::complex<double>(re * scale, im * scale);
    }
    return mu;
}

MomentumDistribution momentum_distribution(const Spectrum& spectrum,
                                           const MomentumGrid& momentum_grid) {
    MomentumDistribution dist = weighted_distribution(
        spectrum.samples, Eigen::VectorXd::Ones(spectrum.n_states()),
        spectrum.grid, momentum_grid);
    dist.species = Species::fermion;
    dist.particle_number = spectrum.config.n_particles;
    return dist;
}

MomentumDistribution momentum_distribution(const OrbitalDecomposition& decomposition,
                                           const MomentumGrid& momentum_grid) {
    const long kept = decomposition.orbitals.cols();
    MomentumDistribution dist = weighted_distribution(
        decomposition.orbitals, decomposition.occupations.head(kept),
        decomposition.grid, momentum_grid);
    dist.species = Species::boson;
    dist.particle_number = decomposition.particle_number;
    return dist;
}

} // namespace tonks
